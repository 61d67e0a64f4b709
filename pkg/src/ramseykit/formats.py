"""Text record formats for colorings and certificates.

Two line kinds make up every file this package reads or writes:

    circulant <N> : <d1> <d2> ...
    distance <N> : <hex>

The circulant form lists the color-1 connection set of a cyclic
coloring; the distance form carries any complete coloring as hex with
bit 0 in the least significant bit of the first hex digit.  An optional
trailing comment of the shape ``# <k> <j> [label]`` attaches the (k, j)
claim a certificate is meant to satisfy.  Other ``#`` comments and blank
lines are ignored.
"""

from __future__ import annotations

from typing import Iterable, Union

from .bitmask import hex_to_mask, mask_to_hex
from .coloring import Certificate, DistanceColoring, from_certificate

Record = Union[Certificate, DistanceColoring]


class FormatError(ValueError):
    """Malformed record text, annotated with the offending line."""

    def __init__(self, message: str, line_no: int = 0):
        self.line_no = line_no
        if line_no:
            message = f"line {line_no}: {message}"
        super().__init__(message)


def _split_meta(text: str):
    body, _, tail = text.partition("#")
    k = j = None
    label = ""
    tokens = tail.split()
    if len(tokens) >= 2 and tokens[0].isdigit() and tokens[1].isdigit():
        k, j = int(tokens[0]), int(tokens[1])
        label = " ".join(tokens[2:])
    elif tokens:
        label = " ".join(tokens)
    return body.strip(), k, j, label


def parse_record(text: str, line_no: int = 0) -> Record:
    """One record line to a Certificate or complete DistanceColoring."""
    body, k, j, label = _split_meta(text)
    parts = body.split(":")
    if len(parts) != 2:
        raise FormatError("expected '<kind> <N> : <payload>'", line_no)
    head = parts[0].split()
    if len(head) != 2:
        raise FormatError("header must be '<kind> <N>'", line_no)
    kind, order_text = head
    if not order_text.isdigit():
        raise FormatError(f"bad order {order_text!r}", line_no)
    order = int(order_text)
    payload = parts[1].split()
    try:
        if kind == "circulant":
            dists = tuple(int(tok) for tok in payload)
            return Certificate(order, dists, k=k, j=j, label=label)
        if kind == "distance":
            if len(payload) != 1:
                raise FormatError("distance record needs one hex field",
                                  line_no)
            value = hex_to_mask(payload[0], order - 1)
            return DistanceColoring.complete(order, value)
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc), line_no) from exc
    raise FormatError(f"unknown record kind {kind!r}", line_no)


def format_record(record: Record) -> str:
    if isinstance(record, Certificate):
        body = "circulant {} : {}".format(
            record.order, " ".join(str(d) for d in record.connection_set))
        if record.k is not None and record.j is not None:
            body += f" # {record.k} {record.j}"
            if record.label:
                body += f" {record.label}"
        return body
    if isinstance(record, DistanceColoring):
        if not record.is_complete():
            raise ValueError("only complete colorings have a text form")
        return "distance {} : {}".format(
            record.order, mask_to_hex(record.colors.value, record.nbits))
    raise TypeError(f"unsupported record type {type(record).__name__}")


def parse_records(lines: Iterable[str]) -> list[Record]:
    records = []
    for line_no, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        records.append(parse_record(stripped, line_no))
    return records


def read_records(path: str) -> list[Record]:
    with open(path) as fh:
        return parse_records(fh)


def write_records(path: str, records: Iterable[Record]) -> None:
    with open(path, "w") as fh:
        for record in records:
            fh.write(format_record(record) + "\n")


def record_coloring(record: Record) -> DistanceColoring:
    """The complete coloring a record denotes, expanding certificates."""
    if isinstance(record, Certificate):
        return from_certificate(record)
    return record


def write_census(path: str, census) -> None:
    """Census file: one header, per-order count lines, retained colorings."""
    with open(path, "w") as fh:
        fh.write(f"census {census.k} {census.j} {census.d} "
                 f"{int(census.reduced)}\n")
        fh.write(f"run {census.tests} {census.longest} "
                 f"{int(census.complete)}\n")
        for order in sorted(census.counts):
            fh.write(f"count {order} {census.counts[order]}\n")
        for order in sorted(census.colorings):
            for value in census.colorings[order]:
                fh.write("distance {} : {}\n".format(
                    order, mask_to_hex(value, order - 1)))


def read_census(path: str):
    from .fullenum import Census
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or not lines[0].startswith("census "):
        raise FormatError("missing census header", 1)
    k, j, d, reduced = (int(t) for t in lines[0].split()[1:])
    census = Census(k, j, d, bool(reduced))
    for line_no, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        if tokens[0] == "run":
            census.tests, census.longest = int(tokens[1]), int(tokens[2])
            census.complete = bool(int(tokens[3]))
        elif tokens[0] == "count":
            census.counts[int(tokens[1])] = int(tokens[2])
        elif tokens[0] == "distance":
            c = parse_record(line, line_no)
            census.colorings.setdefault(c.order, []).append(c.colors.value)
        else:
            raise FormatError(f"unknown census line {tokens[0]!r}", line_no)
    return census
