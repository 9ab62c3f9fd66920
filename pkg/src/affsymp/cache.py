"""Content-addressed disk cache for differential matrices, kernel bases and
matrix ranks.

Keys are SHA-256 digests of structural descriptors (algebra fingerprint,
complex kind, module fingerprint, degree), so a change in any basis
convention invalidates the affected artifacts automatically.  Writes are
atomic (write to a temp file, then rename), giving single-writer /
multi-reader safety.
"""

from __future__ import annotations

import hashlib
import os
import tempfile
from pathlib import Path

from .exact_linalg import QVector, SparseMatrix


def descriptor_key(*parts: object) -> str:
    text = "\x1f".join(str(p) for p in parts)
    return hashlib.sha256(text.encode()).hexdigest()


class DiffCache:
    """Directory of serialized matrices and rank records."""

    def __init__(self, path: str | os.PathLike):
        self.path = Path(path)
        for sub in ("diff", "kernel", "rank"):
            (self.path / sub).mkdir(parents=True, exist_ok=True)

    # -- low-level ------------------------------------------------------

    def _write_atomic(self, target: Path, text: str) -> None:
        fd, tmp = tempfile.mkstemp(dir=str(target.parent), suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, target)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    # -- matrices ---------------------------------------------------------

    def get_matrix(self, kind: str, key: str) -> SparseMatrix | None:
        target = self.path / kind / f"{key}.mtx"
        if not target.exists():
            return None
        return SparseMatrix.from_text(target.read_text())

    def put_matrix(self, kind: str, key: str, matrix: SparseMatrix) -> None:
        self._write_atomic(self.path / kind / f"{key}.mtx", matrix.to_text())

    def get_vectors(self, key: str, length: int) -> list[QVector] | None:
        m = self.get_matrix("kernel", key)
        if m is None:
            return None
        if m.rows != length:
            return None
        cols: list[dict] = [dict() for _ in range(m.cols)]
        for (r, c), v in m.entries.items():
            cols[c][r] = v
        return [QVector.from_dict(length, d) for d in cols]

    def put_vectors(self, key: str, length: int, vectors: list[QVector]) -> None:
        self.put_matrix("kernel", key, SparseMatrix.from_columns(length, vectors))

    # -- ranks -------------------------------------------------------------

    def get_rank(self, matrix_fingerprint: str) -> int | None:
        target = self.path / "rank" / f"{matrix_fingerprint}.txt"
        if not target.exists():
            return None
        return int(target.read_text().strip())

    def put_rank(self, matrix_fingerprint: str, value: int) -> None:
        self._write_atomic(self.path / "rank" / f"{matrix_fingerprint}.txt", f"{value}\n")

    # -- management ----------------------------------------------------------

    def stats(self) -> dict:
        out = {}
        total = 0
        for sub in ("diff", "kernel", "rank"):
            files = list((self.path / sub).glob("*"))
            size = sum(f.stat().st_size for f in files)
            out[sub] = {"files": len(files), "bytes": size}
            total += size
        out["total_bytes"] = total
        out["path"] = str(self.path)
        return out

    def clear(self) -> int:
        removed = 0
        for sub in ("diff", "kernel", "rank"):
            for f in (self.path / sub).glob("*"):
                f.unlink()
                removed += 1
        return removed
