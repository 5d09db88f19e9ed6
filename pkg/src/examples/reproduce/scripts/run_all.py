from abtk.experiments.cli import main

CONVERGENCE_CASES = [(1, 1), (2, 2), (3, 3), (1, 2), (2, 3), (3, 4)]
# iterator variants: library default B(0), and B(alpha)
INIT_VARIANTS = [([], "b0"), (["--init-alpha"], "balpha")]

if __name__ == "__main__":
    configs = "reproduce/configs"
    outputs = "reproduce/outputs"

    failures = 0
    for command, name in [
        ("radius", "radius"),
        ("max-order", "max_order"),
        ("heat", "heat"),
        ("verify-appendix", "verify_appendix"),
    ]:
        failures += main(
            [command, "--config", f"{configs}/{name}.yml", "--out", f"{outputs}/{name}.csv"]
        )

    for flags, suffix in INIT_VARIANTS:
        for q, s in CONVERGENCE_CASES:
            failures += main(
                [
                    "converge-ode",
                    "--config",
                    f"{configs}/converge_ode.yml",
                    "--q",
                    str(q),
                    "--s",
                    str(s),
                    *flags,
                    "--out",
                    f"{outputs}/convergence_q{q}_s{s}_{suffix}.csv",
                ]
            )

    print(f"{failures} experiment(s) with failed checks.")
