from __future__ import annotations
import json
import logging
import os
from datetime import datetime
from logging.handlers import TimedRotatingFileHandler


STAGES = ["cli", "compile", "classify", "query", "transform", "oracle", "bench"]

# structured fields carried through `extra=`; records without them get these
RECORD_FIELDS = {"lang": "", "root": "", "is_progress": False}

FILE_FORMAT = "%(asctime)s [%(levelname)s] [%(name)s] run=%(run_id)s lang=%(lang)s root=%(root)s %(message)s"

_progress_interval = 100


class _StageFields(logging.Filter):
    def __init__(self, run_id: str):
        super().__init__()
        self._defaults = dict(RECORD_FIELDS, run_id=run_id)

    def filter(self, record: logging.LogRecord) -> bool:
        for key, val in self._defaults.items():
            if not hasattr(record, key):
                setattr(record, key, val)
        return True


def _progress_or_warning(record: logging.LogRecord) -> bool:
    return bool(getattr(record, "is_progress", False)) or record.levelno >= logging.WARNING


class _JsonFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        obj = {
            "timestamp": self.formatTime(record),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "run_id": record.run_id,
        }
        obj.update({k: getattr(record, k) for k in RECORD_FIELDS})
        return json.dumps(obj, ensure_ascii=False)


def _level(name) -> int:
    return getattr(logging, str(name).upper(), logging.INFO)


def _log_path(proj_root: str, folder: str, pattern: str, stage: str, run_id: str) -> str:
    if not os.path.isabs(folder):
        folder = os.path.join(proj_root, folder)
    os.makedirs(folder, exist_ok=True)
    return os.path.join(folder, pattern.format(stage=stage, run_id=run_id))


def init_logging(logging_cfg: dict | None, proj_root: str) -> str:
    """Give every stage logger its own file plus the shared stderr console; returns the run id."""
    global _progress_interval
    cfg = logging_cfg or {}
    level = _level(cfg.get("level", "INFO"))
    naming = cfg.get("naming") or {}
    rotation = cfg.get("rotation") or {}
    folders = cfg.get("files") or {}
    pattern = naming.get("pattern") or "{stage}_{run_id}.log"
    run_id = datetime.now().strftime(naming.get("run_id_format") or "%Y%m%d_%H%M%S")
    _progress_interval = int(cfg.get("progress_interval") or 100)

    root = logging.getLogger()
    root.setLevel(level)
    for h in list(root.handlers):
        root.removeHandler(h)

    file_fmt = _JsonFormatter() if cfg.get("json") else logging.Formatter(FILE_FORMAT)

    console = None
    if cfg.get("console", True):
        # stderr; stdout carries command results only
        console = logging.StreamHandler()
        console.setLevel(_level(cfg.get("console_level", "INFO")))
        console.setFormatter(logging.Formatter("%(asctime)s [%(name)s] %(message)s", datefmt="%H:%M:%S"))
        console.addFilter(_progress_or_warning)

    for stage in STAGES:
        logger = logging.getLogger(stage)
        logger.setLevel(level)
        logger.propagate = False
        for h in list(logger.handlers):
            logger.removeHandler(h)
        logger.filters = [_StageFields(run_id)]

        if cfg.get("to_files", True):
            path = _log_path(proj_root, folders.get(stage) or "logs", pattern, stage, run_id)
            if str(rotation.get("mode") or "none").lower() == "time":
                fh: logging.Handler = TimedRotatingFileHandler(
                    path,
                    when=rotation.get("when") or "D",
                    interval=int(rotation.get("interval") or 1),
                    backupCount=int(rotation.get("backup_count") or 0),
                    encoding="utf-8",
                )
            else:
                fh = logging.FileHandler(path, encoding="utf-8")
            fh.setLevel(level)
            fh.setFormatter(file_fmt)
            logger.addHandler(fh)

        if console is not None:
            logger.addHandler(console)

    return run_id


def get_progress_interval() -> int:
    return _progress_interval if _progress_interval > 0 else 100
