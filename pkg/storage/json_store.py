"""
File read/write for run outputs and inputs. Modules go through this layer instead of
calling open() directly.

Relative output paths resolve under the configured output directory; absolute paths and
paths with a directory part are used as given. JSON is written with sorted keys so
identical inputs give byte-identical files. With a precision, floats are written with that
many decimals, the same rendering as the ranking TSV.
"""
import json
import math
from pathlib import Path
from typing import Any

from core.errors import CorpusIoError


class JSONStore:
    def __init__(self, data_dir: str = "."):
        self.data_dir = Path(data_dir)

    def _path(self, path: str | Path) -> Path:
        """Bare file names go under data_dir; anything with a directory part is used as is."""
        p = Path(path)
        if p.is_absolute() or p.parent != Path("."):
            return p
        return self.data_dir / p

    def read_json(self, path: str | Path) -> Any:
        """Read JSON; raise CorpusIoError if missing or invalid."""
        fp = Path(path)
        try:
            with open(fp, "r", encoding="utf-8") as f:
                return json.load(f)
        except json.JSONDecodeError as e:
            raise CorpusIoError(str(fp), f"invalid JSON: {e}") from e
        except OSError as e:
            raise CorpusIoError(str(fp), e.strerror or str(e)) from e

    def read_text(self, path: str | Path) -> str:
        fp = Path(path)
        try:
            return fp.read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            raise CorpusIoError(str(fp), f"not UTF-8: {e.reason}") from e
        except OSError as e:
            raise CorpusIoError(str(fp), e.strerror or str(e)) from e

    def write_json(self, path: str | Path, data: Any, precision: int | None = None) -> Path:
        """Write data as JSON; returns the resolved path."""
        return self.write_text(path, dump_json(data, precision))

    def write_text(self, path: str | Path, text: str) -> Path:
        fp = self._path(path)
        fp.parent.mkdir(parents=True, exist_ok=True)
        with open(fp, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        return fp


def dump_json(data: Any, precision: int | None = None) -> str:
    if precision is None:
        return json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True) + "\n"
    return _encode(data, precision, 2, 0) + "\n"


def fixed_json(data: Any, precision: int = 6) -> str:
    """Compact JSON with sorted keys and every float written with exactly `precision` decimals."""
    return _encode(data, precision, None, 0)


def _encode(obj: Any, precision: int, indent: int | None, level: int) -> str:
    if isinstance(obj, float) and math.isfinite(obj):
        return f"{obj:.{precision}f}"
    if isinstance(obj, dict):
        items = [
            (json.dumps(str(k), ensure_ascii=False), _encode(obj[k], precision, indent, level + 1))
            for k in sorted(obj, key=str)
        ]
        return _wrap("{", "}", [f"{k}: {v}" if indent else f"{k}:{v}" for k, v in items], indent, level)
    if isinstance(obj, (list, tuple)):
        return _wrap("[", "]", [_encode(x, precision, indent, level + 1) for x in obj], indent, level)
    return json.dumps(obj, ensure_ascii=False)


def _wrap(open_: str, close: str, parts: list[str], indent: int | None, level: int) -> str:
    if not parts:
        return open_ + close
    if indent is None:
        return open_ + ",".join(parts) + close
    pad = " " * (indent * (level + 1))
    return open_ + "\n" + ",\n".join(pad + p for p in parts) + "\n" + " " * (indent * level) + close
