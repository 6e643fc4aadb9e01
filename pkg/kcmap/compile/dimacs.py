from __future__ import annotations
import io
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, TextIO, Union

from kcmap.common.errors import DimacsParseError
from kcmap.nnf.literals import Clause, format_lits, is_tautology, var_of
from kcmap.nnf.rewrite import build_cnf
from kcmap.nnf.store import NnfStore, Sentence


@dataclass
class CnfFormula:
    num_vars: int
    clauses: List[Clause] = field(default_factory=list)

    @property
    def tautologies(self) -> List[int]:
        """Indices of valid clauses (kept, only flagged)."""
        return [i for i, c in enumerate(self.clauses) if is_tautology(c)]

    @property
    def variables(self) -> List[int]:
        return sorted({var_of(l) for c in self.clauses for l in c})

    def to_sentence(self, store: Optional[NnfStore] = None) -> Sentence:
        st = store if store is not None else NnfStore(self.num_vars)
        st.ensure_vars(self.num_vars)
        return build_cnf(st, self.clauses)


def parse_dimacs(source: Union[str, TextIO, Iterable[str]]) -> CnfFormula:
    """Reads `p cnf V C` with 0-terminated clauses; a clause may span lines."""
    if isinstance(source, str):
        source = io.StringIO(source)
    num_vars: Optional[int] = None
    declared = 0
    clauses: List[Clause] = []
    current: List[int] = []
    last_line = 0
    for lineno, raw in enumerate(source, start=1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break  # SATLIB end marker
        if line.startswith("p"):
            parts = line.split()
            if num_vars is not None:
                raise DimacsParseError(lineno, "header", "duplicate problem line")
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsParseError(lineno, "header", f"expected 'p cnf <vars> <clauses>', got {line!r}")
            try:
                num_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsParseError(lineno, "header", f"non-integer counts in {line!r}") from None
            if num_vars < 0 or declared < 0:
                raise DimacsParseError(lineno, "header", "negative counts")
            continue
        if num_vars is None:
            raise DimacsParseError(lineno, "header", "clause before problem line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsParseError(lineno, "token", f"not an integer: {tok!r}") from None
            if lit == 0:
                clauses.append(frozenset(current))
                current = []
                continue
            if var_of(lit) > num_vars:
                raise DimacsParseError(lineno, "range", f"literal {lit} exceeds {num_vars} variables")
            current.append(lit)
    if num_vars is None:
        raise DimacsParseError(last_line or 1, "header", "missing problem line")
    if current:
        raise DimacsParseError(last_line, "unterminated", f"clause {current} lacks the terminating 0")
    if len(clauses) != declared:
        raise DimacsParseError(last_line, "count", f"header declares {declared} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, clauses)


def read_dimacs_file(path: str) -> CnfFormula:
    with open(path, "r", encoding="utf-8") as f:
        return parse_dimacs(f)


def write_dimacs(f: CnfFormula, sink: Optional[TextIO] = None) -> str:
    return _write_list("cnf", f.num_vars, f.clauses, sink)


def write_clause_list(num_vars: int, clauses: Iterable[Clause], sink: Optional[TextIO] = None) -> str:
    return _write_list("cnf", num_vars, list(clauses), sink)


def write_term_list(num_vars: int, terms: Iterable[Clause], sink: Optional[TextIO] = None) -> str:
    return _write_list("dnf", num_vars, list(terms), sink)


def _write_list(kind: str, num_vars: int, sets: List[Clause], sink: Optional[TextIO]) -> str:
    lines = [f"p {kind} {num_vars} {len(sets)}"]
    for s in sets:
        body = format_lits(s)
        lines.append(f"{body} 0" if body else "0")
    text = "\n".join(lines) + "\n"
    if sink is not None:
        sink.write(text)
    return text
