"""Plain-text serialization: 17-significant-digit floats, JSON, CSV, key=value.

Every numeric value is written with 17 significant decimal digits, which is
enough for IEEE doubles to round-trip bit-exactly.  The JSON emitter is a
small recursive writer rather than ``json.dumps`` so that float formatting
is under our control; outputs are deterministic (no timestamps, stable key
order as supplied).
"""

import math
import os
import tempfile

from .kinematics import KinematicState


def format_float(value) -> str:
    """Decimal text with 17 significant digits; round-trips bit-exactly."""
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.17g}"


def dumps_json(obj, indent: int = 2) -> str:
    """Serialize nested dict/list/str/float/int/bool/None to JSON text."""
    out: list[str] = []
    _emit(obj, out, indent, 0)
    out.append("\n")
    return "".join(out)


def _emit(obj, out, indent, level):
    pad = " " * (indent * (level + 1))
    end_pad = " " * (indent * level)
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(_escape(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            out.append("null")  # JSON has no non-finite numbers
        else:
            out.append(format_float(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            out.append(f"{pad}{_escape(str(key))}: ")
            _emit(value, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end_pad + "}")
    elif isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            out.append("[]")
            return
        out.append("[\n")
        for i, value in enumerate(obj):
            out.append(pad)
            _emit(value, out, indent, level + 1)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end_pad + "]")
    else:
        # numpy scalars and other float-likes
        _emit(float(obj), out, indent, level)


def _escape(text: str) -> str:
    body = (
        text.replace("\\", "\\\\")
        .replace('"', '\\"')
        .replace("\n", "\\n")
        .replace("\t", "\\t")
        .replace("\r", "\\r")
    )
    return f'"{body}"'


TRAJECTORY_HEADER = "t,a,b,X,Z,u,w,ax,az"
SURFACE_HEADER = "t,X,eta"


def trajectory_csv(a: float, b: float, samples: list[tuple[float, KinematicState]]) -> str:
    """CSV text for a sampled trajectory, one row per sample."""
    lines = [TRAJECTORY_HEADER]
    for t, st in samples:
        lines.append(
            ",".join(
                format_float(v)
                for v in (t, a, b, st.x, st.z, st.u, st.w, st.ax, st.az)
            )
        )
    return "\n".join(lines) + "\n"


def surface_csv(t: float, xs, etas) -> str:
    """CSV text for a sampled free surface."""
    lines = [SURFACE_HEADER]
    for x, eta in zip(xs, etas):
        lines.append(",".join(format_float(v) for v in (t, x, eta)))
    return "\n".join(lines) + "\n"


def parse_key_value(text: str) -> dict[str, str]:
    """Parse a flat ``key=value`` document; '#' starts a comment."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ValueError(f"line {lineno}: empty key")
        if key in values:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value
    return values


def write_text_atomic(path: str, text: str) -> None:
    """Whole-file atomic write: temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
