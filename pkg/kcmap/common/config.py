from __future__ import annotations
import os
from typing import Any, Dict, List, Optional
import yaml


def project_root() -> str:
    # kcmap/common/config.py -> kcmap/common -> kcmap -> project root
    return os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))


def default_config_path() -> str:
    return os.path.join(project_root(), "config", "settings.yaml")


def load_settings(path: Optional[str]) -> Dict[str, Any]:
    if not path or not os.path.exists(path):
        return {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
            if isinstance(data, dict):
                return data  # type: ignore[return-value]
            return {}
    except Exception:
        return {}


def section(cfg: Dict[str, Any], name: str) -> Dict[str, Any]:
    val = (cfg or {}).get(name) if isinstance(cfg, dict) else None
    return val if isinstance(val, dict) else {}


def ensure_parent_dir(p: str) -> None:
    d = os.path.dirname(p)
    if d:
        os.makedirs(d, exist_ok=True)


def resolve_path(p: str, base: str | None = None) -> str:
    if not isinstance(p, str) or not p:
        return p
    if os.path.isabs(p):
        return p
    base_dir = base or project_root()
    return os.path.normpath(os.path.join(base_dir, p))


def parse_int_list(txt: Any) -> List[int]:
    """Accepts "1 -3 4", "3,1,2" or a YAML list."""
    if txt is None:
        return []
    if isinstance(txt, (list, tuple)):
        return [int(x) for x in txt]
    parts = str(txt).replace(",", " ").split()
    return [int(x) for x in parts]


def apply_settings(cfg: Dict[str, Any]) -> None:
    # imported here to keep config free of package cycles
    from kcmap.oracle import truth_table
    from kcmap.properties import classify
    from kcmap.properties import membership
    from kcmap.transform import transformer

    oracle_cfg = section(cfg, "oracle")
    if "max_vars" in oracle_cfg:
        truth_table.MAX_VARS = int(oracle_cfg["max_vars"])
    if "max_prime_vars" in oracle_cfg:
        truth_table.MAX_PRIME_VARS = int(oracle_cfg["max_prime_vars"])

    classify_cfg = section(cfg, "classify")
    if "oracle" in classify_cfg:
        classify.USE_ORACLE = bool(classify_cfg["oracle"])

    queries_cfg = section(cfg, "queries")
    if "verify_semantic" in queries_cfg:
        membership.VERIFY_SEMANTIC = bool(queries_cfg["verify_semantic"])

    transforms_cfg = section(cfg, "transforms")
    if "verify_pi" in transforms_cfg:
        transformer.VERIFY_PI = bool(transforms_cfg["verify_pi"])

    compile_cfg = section(cfg, "compile")
    if "pi_max_vars" in compile_cfg:
        from kcmap.compile import prime
        prime.MAX_VARS = int(compile_cfg["pi_max_vars"])
