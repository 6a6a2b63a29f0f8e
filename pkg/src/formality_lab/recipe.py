"""Model recipes: expression trees over the built-in models, used for replay."""

from __future__ import annotations

from dataclasses import dataclass


ATOMS = {"MPQ": 2, "FGG": 1, "S2": 0, "T2": 0, "TORUS": 1, "FILE": 1}


@dataclass(frozen=True)
class Recipe:
    op: str
    args: tuple = ()

    def __post_init__(self):
        if self.op in ATOMS:
            if len(self.args) != ATOMS[self.op]:
                raise ValueError(f"{self.op} takes {ATOMS[self.op]} arguments")
        elif self.op == "TENSOR":
            if len(self.args) != 2 or not all(isinstance(a, Recipe) for a in self.args):
                raise ValueError("TENSOR takes two recipes")
        elif self.op == "S1_BUNDLE":
            if len(self.args) != 2 or not isinstance(self.args[0], Recipe) or self.args[1] != "omega":
                raise ValueError("S1_BUNDLE takes a base recipe and the class 'omega'")
        else:
            raise ValueError(f"unknown recipe operation {self.op!r}")

    # -- construction -----------------------------------------------------

    def build(self):
        """Instantiate the model described by this recipe."""
        from . import zoo
        from .constructions import circle_bundle_model, tensor_models

        op, args = self.op, self.args
        if op == "MPQ":
            return zoo.m_pq(*args)
        if op == "FGG":
            return zoo.fgg(*args)
        if op == "S2":
            return zoo.sphere2_model()
        if op == "T2":
            return zoo.torus_model(1)
        if op == "TORUS":
            return zoo.torus_model(*args)
        if op == "FILE":
            return zoo.from_spec(f"file:{args[0]}")
        if op == "TENSOR":
            return tensor_models(args[0].build(), args[1].build(), recipe=self)
        return circle_bundle_model(args[0].build(), recipe=self)[0]

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "op": self.op,
            "args": [a.to_dict() if isinstance(a, Recipe) else a for a in self.args],
        }

    @classmethod
    def from_dict(cls, data: dict) -> Recipe:
        args = tuple(
            cls.from_dict(a) if isinstance(a, dict) else a for a in data.get("args", ())
        )
        return cls(data["op"], args)

    def factors(self) -> list[Recipe]:
        if self.op == "TENSOR":
            return self.args[0].factors() + self.args[1].factors()
        return [self]

    def _atom_str(self) -> str:
        if self.op == "MPQ":
            return f"MPQ({self.args[0]},{self.args[1]})"
        if self.op in ("FGG", "TORUS"):
            return f"{self.op}({self.args[0]})"
        if self.op == "FILE":
            return f"FILE({self.args[0]})"
        if self.op == "S1_BUNDLE":
            return f"S1_BUNDLE({self.args[0]}, ω)"
        return self.op

    def __str__(self):
        parts: list[tuple[str, int]] = []
        for f in self.factors():
            s = f._atom_str()
            if parts and parts[-1][0] == s:
                parts[-1] = (s, parts[-1][1] + 1)
            else:
                parts.append((s, 1))
        return " ⊗ ".join(s if k == 1 else f"{s}^{k}" for s, k in parts)


def tensor_of(*recipes: Recipe) -> Recipe:
    out = recipes[0]
    for r in recipes[1:]:
        out = Recipe("TENSOR", (out, r))
    return out


def with_power(r: Recipe, atom: Recipe, k: int) -> Recipe:
    return tensor_of(r, *([atom] * k)) if k else r
