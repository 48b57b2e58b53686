"""JSON table documents: {n, provenance, squares, entries: [[I, J, sign, K], ...]}."""

from __future__ import annotations

import logging
from pathlib import Path

import msgspec
import numpy as np

from cliffmorph.config import get_settings

from .models import TableFormatError
from .tables import ProductTable

logger = logging.getLogger(__name__)


class TableDocument(msgspec.Struct, forbid_unknown_fields=True):
    """Serialized product table with entries sorted by (I, J)."""

    n: int
    provenance: str
    squares: list[int]
    entries: list[tuple[int, int, int, int]]


def to_document(table: ProductTable) -> TableDocument:
    """Dense document of ``table`` with every entry listed."""
    signs, blades = table.arrays()
    entries = [
        (i, j, int(signs[i, j]), int(blades[i, j]))
        for i in range(table.size)
        for j in range(table.size)
    ]
    return TableDocument(
        n=table.n,
        provenance=table.provenance,
        squares=list(table.squares),
        entries=entries,
    )


def from_document(document: TableDocument) -> ProductTable:
    """Rebuild a table, rejecting documents that do not describe one."""
    n_max = get_settings().n_max
    if not 1 <= document.n <= n_max:
        raise TableFormatError(
            f"Table dimension {document.n} outside supported range 1..{n_max}"
        )
    size = 1 << document.n
    if len(document.entries) != size * size:
        raise TableFormatError(
            f"Expected {size * size} entries for n={document.n}, "
            f"got {len(document.entries)}"
        )

    signs = np.zeros((size, size), dtype=np.int8)
    blades = np.zeros((size, size), dtype=np.int32)
    for position, (i, j, sign, blade) in enumerate(document.entries):
        if (i, j) != divmod(position, size):
            raise TableFormatError(
                f"Entry {position} is ({i}, {j}); entries must be sorted by (I, J)"
            )
        if sign not in (1, -1) or not 0 <= blade < size:
            raise TableFormatError(f"Entry ({i}, {j}) is invalid: {sign}, {blade}")
        signs[i, j] = sign
        blades[i, j] = blade

    table = ProductTable.from_arrays(signs, blades, document.provenance)
    if list(table.squares) != document.squares:
        raise TableFormatError(
            f"Declared squares {document.squares} disagree with entries "
            f"{list(table.squares)}"
        )
    return table


def encode_table(table: ProductTable) -> bytes:
    """JSON bytes of the table document."""
    return msgspec.json.encode(to_document(table))


def decode_table(data: bytes | str) -> ProductTable:
    """Parse and validate a JSON table document."""
    try:
        document = msgspec.json.decode(data, type=TableDocument)
    except (msgspec.ValidationError, msgspec.DecodeError) as e:
        raise TableFormatError(f"Invalid table document: {e}") from e
    return from_document(document)


def save_table(table: ProductTable, path: Path) -> None:
    """Write ``table`` as a JSON document to ``path``."""
    path.write_bytes(encode_table(table))
    logger.info(f"Wrote {table} to {path}")


def load_table(path: Path) -> ProductTable:
    """Read a JSON table document from ``path``."""
    try:
        data = path.read_bytes()
    except OSError as e:
        raise TableFormatError(f"Cannot read table file {path}: {e}") from e
    return decode_table(data)
