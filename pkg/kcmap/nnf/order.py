from __future__ import annotations
from dataclasses import dataclass, field
from typing import Dict, Iterable, Tuple


@dataclass(frozen=True)
class VarOrder:
    order: Tuple[int, ...]
    _rank: Dict[int, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        if len(set(self.order)) != len(self.order) or any(v < 1 for v in self.order):
            raise ValueError(f"variable order must list distinct positive indices: {self.order}")
        object.__setattr__(self, "_rank", {v: i for i, v in enumerate(self.order)})

    @classmethod
    def natural(cls, num_vars: int) -> "VarOrder":
        return cls(tuple(range(1, num_vars + 1)))

    @classmethod
    def of(cls, vars_: Iterable[int]) -> "VarOrder":
        return cls(tuple(int(v) for v in vars_))

    def rank(self, var: int) -> int:
        try:
            return self._rank[var]
        except KeyError:
            raise KeyError(f"variable x{var} is not in the order") from None

    def __contains__(self, var: object) -> bool:
        return var in self._rank

    def __len__(self) -> int:
        return len(self.order)

    def covering(self, vars_: Iterable[int]) -> "VarOrder":
        """Extends the order with missing variables appended in index order."""
        extra = sorted(set(vars_) - set(self.order))
        return self if not extra else VarOrder(self.order + tuple(extra))

    def compatible(self, other: "VarOrder") -> bool:
        shared = [v for v in self.order if v in other]
        return all(other.rank(a) < other.rank(b) for a, b in zip(shared, shared[1:]))

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.order)
