"""The parameter tuple that governs one integrator configuration."""

from dataclasses import dataclass


@dataclass(frozen=True)
class IntegratorConfig:
    """Expansion order, node count, contour radius and time step of an ABTI run.

    Exactly one of `r` and `alpha` may be given; with neither, `alpha = 1` (i.e. `r = tau`). The stored `alpha` is always recomputed as `tau / r`, and `delta_q` records whether the node count equals the expansion order (the configuration that loses one order).

    Attributes:
        q: expansion order, at least 1

        s: number of contour nodes (roots of unity), at least `q`

        tau: time step

        r: contour radius

        alpha: `tau / r`

        delta_q: 1 if `s == q` else 0
    """

    q: int
    s: int
    tau: float
    r: float
    alpha: float
    delta_q: int

    def __init__(
        self,
        q: int,
        s: int,
        tau: float,
        r: float | None = None,
        alpha: float | None = None,
    ) -> None:
        if q < 1:
            raise ValueError(f"Expansion order q must be at least 1, got {q}.")
        if s < q:
            raise ValueError(f"Node count s={s} must be at least the expansion order q={q}.")
        if tau <= 0:
            raise ValueError(f"Time step must be positive, got tau={tau}.")
        if r is not None and alpha is not None:
            raise ValueError("Give the contour radius r or the ratio alpha, not both.")
        if alpha is not None:
            if alpha <= 0:
                raise ValueError(f"alpha must be positive, got {alpha}.")
            r = tau / alpha
        elif r is None:
            r = tau
        if r <= 0:
            raise ValueError(f"Contour radius must be positive, got r={r}.")

        # use of __setattr__ is to work around the issues with @dataclass(frozen=True)
        object.__setattr__(self, "q", int(q))
        object.__setattr__(self, "s", int(s))
        object.__setattr__(self, "tau", float(tau))
        object.__setattr__(self, "r", float(r))
        object.__setattr__(self, "alpha", float(tau) / float(r))
        object.__setattr__(self, "delta_q", int(s == q))

    def with_tau(self, tau: float) -> "IntegratorConfig":
        """Same (q, s, alpha) with a new time step."""
        return IntegratorConfig(self.q, self.s, tau, alpha=self.alpha)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "s": self.s,
            "tau": self.tau,
            "r": self.r,
            "alpha": self.alpha,
            "delta_q": self.delta_q,
        }
