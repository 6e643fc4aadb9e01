import argparse
import logging
import os
import sys

# ensure project root on sys.path
PROJ_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if PROJ_ROOT not in sys.path:
    sys.path.insert(0, PROJ_ROOT)

from kcmap.common.config import apply_settings, load_settings, resolve_path, section
from kcmap.common.logging_config import init_logging
from kcmap.families.report import run_size_report


def main() -> int:
    parser = argparse.ArgumentParser(description="Size report over the separation families (CSV, optional xlsx)")
    default_config = os.path.join(PROJ_ROOT, "config", "settings.yaml")
    parser.add_argument("--config", default=default_config, help="Path to settings.yaml")
    parser.add_argument("--out", help="CSV path (default bench.output or output/bench/report.csv)")
    parser.add_argument("--excel", help="Optional xlsx companion")
    parser.add_argument("--workers", type=int)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    cfg = load_settings(args.config)
    init_logging(section(cfg, "logging"), PROJ_ROOT)
    apply_settings(cfg)
    logger = logging.getLogger("bench")

    bench = dict(section(cfg, "bench"))
    bench["output"] = resolve_path(args.out or bench.get("output") or "output/bench/report.csv")
    excel = args.excel or bench.get("excel")
    bench["excel"] = resolve_path(excel) if excel else None
    if args.workers is not None:
        bench["workers"] = args.workers
    bench["seed"] = args.seed

    logger.info("开始生成规模报告 …", extra={"is_progress": True})
    report = run_size_report(bench)
    failed = [c for c in report.claims if not c.ok]
    for c in report.claims:
        logger.info("%s %s: %s", "通过" if c.ok else "未通过", c.name, c.detail, extra={"is_progress": True})
    logger.info("完成：csv=%s xlsx=%s rows=%d", bench["output"], bench["excel"], len(report.rows), extra={"is_progress": True})
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
