from typing import Any, Generic, TypeVar

import numpy as np
from yaml import YAMLObject

K = TypeVar("K")
V = TypeVar("V")


def _plain(value: Any) -> Any:
    """numpy scalars and arrays as built-in Python values, so they hash and dump cleanly."""
    if isinstance(value, np.ndarray):
        return tuple(_plain(v) for v in value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, (list, tuple)):
        return tuple(_plain(v) for v in value)
    if isinstance(value, complex):
        return str(value)
    return value


class FrozenParams(dict[K, V], Generic[K, V], YAMLObject):
    """An immutable parameter echo, attached to every report and grid."""

    yaml_tag = "!params"

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(
            (key, _plain(value)) for key, value in dict(*args, **kwargs).items()
        )

    def __hash__(self):
        return hash(frozenset(self.items()))

    def __reduce__(self):
        return (FrozenParams, (dict(self),))

    def __setitem__(self, key, value):
        raise TypeError("FrozenParams is immutable")

    def __delitem__(self, key):
        raise TypeError("FrozenParams is immutable")

    def clear(self):
        raise TypeError("FrozenParams is immutable")

    def pop(self, key, default=None):
        raise TypeError("FrozenParams is immutable")

    def popitem(self):
        raise TypeError("FrozenParams is immutable")

    def setdefault(self, key, default=None):
        raise TypeError("FrozenParams is immutable")

    def update(self, *args, **kwargs):
        raise TypeError("FrozenParams is immutable")

    def to_dict(self) -> dict:
        return {key: list(value) if isinstance(value, tuple) else value for key, value in self.items()}

    @classmethod
    def to_yaml(cls, dumper, data):
        return dumper.represent_mapping(cls.yaml_tag, data.to_dict())

    @classmethod
    def from_yaml(cls, loader, node):
        return FrozenParams(loader.construct_mapping(node, deep=True))

    def __repr__(self):
        return f"FrozenParams({super().__repr__()})"
