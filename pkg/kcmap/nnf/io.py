from __future__ import annotations
import io
from typing import Dict, Iterable, List, Optional, TextIO, Union

from kcmap.common.errors import NnfParseError
from kcmap.nnf.store import AND, FALSE, LIT, OR, TRUE, NnfStore, Sentence, decision_of, reachable
from kcmap.nnf.literals import var_of


def write_nnf(s: Sentence, sink: Optional[TextIO] = None) -> str:
    store = s.store
    ids = reachable(store, s.root)
    renum: Dict[int, int] = {r: i for i, r in enumerate(ids)}
    edges = 0
    lines: List[str] = []
    for r in ids:
        n = store.nodes[r]
        if n.kind == TRUE:
            lines.append("A 0")
        elif n.kind == FALSE:
            lines.append("O 0 0")
        elif n.kind == LIT:
            lines.append(f"L {n.lit}")
        elif n.kind == AND:
            kids = [str(renum[c]) for c in n.children]
            edges += len(kids)
            lines.append(f"A {len(kids)} {' '.join(kids)}")
        else:
            kids = [str(renum[c]) for c in n.children]
            edges += len(kids)
            d = decision_of(store, r)
            j = d[0] if d is not None else 0
            lines.append(f"O {j} {len(kids)} {' '.join(kids)}")
    text = f"nnf {len(ids)} {edges} {store.num_vars}\n" + "".join(line + "\n" for line in lines)
    if sink is not None:
        sink.write(text)
    return text


def _ints(parts: List[str], lineno: int) -> List[int]:
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise NnfParseError(lineno, f"non-integer token in {' '.join(parts)!r}")


def read_nnf(source: Union[str, TextIO, Iterable[str]], store: Optional[NnfStore] = None) -> Sentence:
    if isinstance(source, str):
        source = io.StringIO(source)
    lines = [ln.rstrip("\n") for ln in source]
    body = [(i + 1, ln.split()) for i, ln in enumerate(lines) if ln.strip() and not ln.lstrip().startswith("c ")]
    if not body:
        raise NnfParseError(1, "empty input")
    head_no, head = body[0]
    if len(head) != 4 or head[0] != "nnf":
        raise NnfParseError(head_no, "malformed header, expected 'nnf <nodes> <edges> <vars>'")
    n_nodes, n_edges, n_vars = _ints(head[1:], head_no)
    if n_nodes < 1 or n_edges < 0 or n_vars < 0:
        raise NnfParseError(head_no, "malformed header counts")
    node_lines = body[1:]
    if len(node_lines) != n_nodes:
        raise NnfParseError(head_no, f"header declares {n_nodes} nodes, found {len(node_lines)}")

    st = store if store is not None else NnfStore(n_vars)
    st.ensure_vars(n_vars)
    refs: List[int] = []
    edges = 0
    for idx, (lineno, parts) in enumerate(node_lines):
        tag = parts[0]
        nums = _ints(parts[1:], lineno)
        if tag == "L":
            if len(nums) != 1 or nums[0] == 0:
                raise NnfParseError(lineno, "literal line needs one nonzero integer")
            if var_of(nums[0]) > n_vars:
                raise NnfParseError(lineno, f"variable {var_of(nums[0])} exceeds declared {n_vars}")
            refs.append(st.literal(nums[0]))
            continue
        if tag == "A":
            if not nums or nums[0] != len(nums) - 1:
                raise NnfParseError(lineno, "and line child count mismatch")
            kids = nums[1:]
        elif tag == "O":
            if len(nums) < 2 or nums[1] != len(nums) - 2:
                raise NnfParseError(lineno, "or line child count mismatch")
            if nums[0] < 0 or nums[0] > n_vars:
                raise NnfParseError(lineno, f"decision variable {nums[0]} out of range")
            kids = nums[2:]
        else:
            raise NnfParseError(lineno, f"unknown node tag {tag!r}")
        for k in kids:
            if k < 0 or k >= idx:
                raise NnfParseError(lineno, f"child id {k} is not smaller than node id {idx}")
        edges += len(kids)
        refs.append(st.build(AND if tag == "A" else OR, [refs[k] for k in kids]))
    if edges != n_edges:
        raise NnfParseError(head_no, f"header declares {n_edges} edges, found {edges}")
    return Sentence(st, refs[-1])


def read_nnf_file(path: str, store: Optional[NnfStore] = None) -> Sentence:
    with open(path, "r", encoding="utf-8") as f:
        return read_nnf(f, store)


def write_nnf_file(s: Sentence, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        write_nnf(s, f)
