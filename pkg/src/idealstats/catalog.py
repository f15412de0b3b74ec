"""Field catalog parsing and the on-disk prime ideal table cache.

Catalog lines are whitespace separated: ``label d class_number regulator nu``
with ``#`` comments and blank lines ignored.  The label ``Q`` denotes the
rational field and takes no further columns.  Regulators are given to full
double precision so the residue kappa is reproducible bit for bit.

Cached prime tables live under ``<cache_dir>/<label>/<bound>.primetab`` as
CSV rows ``p,conjugate_index,norm,f,ramified`` behind a header line with a
format magic, the field label, the bound and a SHA-256 checksum of the body.
Files are written to a temporary name and renamed into place; a cache built
for a larger bound serves any smaller request (prefix property).
"""

from __future__ import annotations

import hashlib
import io
import os
import tempfile
import warnings
from pathlib import Path

import numpy as np

from .errors import CatalogError, InvalidFieldError
from .fields import FieldDescriptor, quadratic_field, rational_field
from .primeideals import PrimeIdealTable, prime_ideal_table

MAGIC = "idealstats-primetab-v1"

# Labels use sqrt spelled out; negative d keeps its minus sign.
DEFAULT_CATALOG = """\
# label  d  class_number  regulator  nu
Q
Qi        -1  1  1.0  4
Qsqrt-3   -3  1  1.0  6
Qsqrt2     2  1  0.881373587019543025  2
Qsqrt5     5  1  0.481211825059603447  2
"""


def parse_catalog(text: str, source: str = "<string>") -> list[FieldDescriptor]:
    fields: list[FieldDescriptor] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        label = parts[0]
        if label in seen:
            raise CatalogError(f"{source}:{lineno}: duplicate label {label!r}")
        seen.add(label)
        try:
            if label == "Q":
                if len(parts) != 1:
                    raise ValueError("label Q takes no further columns")
                fields.append(rational_field())
            else:
                if len(parts) != 5:
                    raise ValueError(
                        f"expected 'label d class_number regulator nu', got {len(parts)} columns"
                    )
                d = int(parts[1])
                class_number = int(parts[2])
                regulator = float(parts[3])
                nu = int(parts[4])
                fields.append(quadratic_field(label, d, class_number, regulator, nu))
        except (ValueError, InvalidFieldError) as exc:
            raise CatalogError(f"{source}:{lineno}: field {label!r}: {exc}") from exc
    return fields


def load_catalog(path: str | os.PathLike | None = None) -> dict[str, FieldDescriptor]:
    """Catalog as a label-keyed dict; the built-in catalog when path is None."""
    if path is None:
        entries = parse_catalog(DEFAULT_CATALOG, source="<default>")
    else:
        p = Path(path)
        try:
            text = p.read_text()
        except OSError as exc:
            raise CatalogError(f"cannot read catalog {p}: {exc}") from exc
        entries = parse_catalog(text, source=str(p))
    return {f.label: f for f in entries}


def default_cache_dir() -> Path:
    env = os.environ.get("IDEALSTATS_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME", os.path.join(os.path.expanduser("~"), ".cache"))
    return Path(base) / "idealstats"


def _table_body(table: PrimeIdealTable) -> str:
    buf = io.StringIO()
    for i in range(len(table)):
        buf.write(
            f"{int(table.p[i])},{int(table.conjugate_index[i])},"
            f"{int(table.norm[i])},{int(table.f[i])},{int(table.ramified[i])}\n"
        )
    return buf.getvalue()


def write_prime_table(table: PrimeIdealTable, path: Path) -> None:
    body = _table_body(table)
    digest = hashlib.sha256(body.encode()).hexdigest()
    header = f"# {MAGIC} field={table.label} x={table.limit} sha256={digest}\n"
    header += "p,conjugate_index,norm,f,ramified\n"
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(header + body)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_prime_table(path: Path, label: str) -> PrimeIdealTable:
    """Parse and verify a cached table; raises CatalogError on any mismatch."""
    try:
        text = path.read_text()
    except OSError as exc:
        raise CatalogError(f"cannot read cache {path}: {exc}") from exc
    lines = text.split("\n")
    if len(lines) < 2 or not lines[0].startswith(f"# {MAGIC} "):
        raise CatalogError(f"{path}: missing or foreign header")
    meta = dict(kv.split("=", 1) for kv in lines[0][2 + len(MAGIC) + 1 :].split())
    if meta.get("field") != label:
        raise CatalogError(f"{path}: cached for field {meta.get('field')!r}, not {label!r}")
    body = "\n".join(lines[2:])
    digest = hashlib.sha256(body.encode()).hexdigest()
    if digest != meta.get("sha256"):
        raise CatalogError(f"{path}: checksum mismatch")
    limit = int(meta["x"])
    if body.strip():
        data = np.loadtxt(io.StringIO(body), delimiter=",", dtype=np.int64, ndmin=2)
    else:
        data = np.empty((0, 5), dtype=np.int64)
    return PrimeIdealTable(
        label,
        limit,
        data[:, 0].copy(),
        data[:, 1].astype(np.int8),
        data[:, 2].copy(),
        data[:, 3].astype(np.int8),
        data[:, 4].astype(bool),
    )


def cache_get_or_build(
    desc: FieldDescriptor, x: int | float, cache_dir: str | os.PathLike | None = None
) -> PrimeIdealTable:
    """Prime ideal table for norms <= x, served from disk when possible.

    Any cached bound >= x satisfies the request (the table is truncated).
    Corrupt cache files are rebuilt with a warning, never trusted.
    """
    bound = int(x)
    root = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    field_dir = root / desc.label
    best: Path | None = None
    best_bound = -1
    if field_dir.is_dir():
        for entry in sorted(field_dir.glob("*.primetab")):
            try:
                cached_bound = int(entry.stem)
            except ValueError:
                continue
            if cached_bound >= bound and (best is None or cached_bound < best_bound):
                best, best_bound = entry, cached_bound
    if best is not None:
        try:
            return read_prime_table(best, desc.label).truncate(bound)
        except CatalogError as exc:
            warnings.warn(f"rebuilding corrupt prime table cache: {exc}")
    table = prime_ideal_table(desc, bound)
    write_prime_table(table, field_dir / f"{bound}.primetab")
    return table
