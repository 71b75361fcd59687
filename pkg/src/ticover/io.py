"""Instance files and report rendering.

Instance files are JSON::

    {"covering_length": "1",
     "agents": [{"s": "0"}, {"s": "3/2", "length": "1"}]}

Numbers are strings holding an exact decimal (``"0.25"``) or a rational
(``"3/2"``); they are parsed without rounding. Serialisation writes lowest
terms and adds each agent's ``id`` so that ids survive a round trip.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import re
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Any

from .core import AgentInterval, Instance, Lottery, Placement

_NUMBER = re.compile(r"^\s*[+-]?(\d+(\.\d*)?|\.\d+)\s*(/\s*[+-]?\d+\s*)?$")


class InstanceFormatError(ValueError):
    """Instance text that cannot be turned into an :class:`Instance`."""


def parse_number(text: Any, where: str = "value") -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise InstanceFormatError(f"{where}: expected a number string, got {text!r}")
    text = str(text)
    if not _NUMBER.match(text):
        raise InstanceFormatError(f"{where}: malformed number {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise InstanceFormatError(f"{where}: zero denominator in {text!r}")
    if den and "." in num:
        raise InstanceFormatError(f"{where}: malformed number {text!r}")
    return Fraction(text.replace(" ", ""))


def format_number(x: Fraction) -> str:
    """Lowest-terms ``p/q``; integers render without a denominator."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def render_decimal(x: Fraction) -> str:
    """Presentational decimal, at least 12 significant digits, error below 1e-12."""
    x = Fraction(x)
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(x.numerator) / Decimal(x.denominator)
        if d == 0:
            return "0"
        exponent = d.adjusted()
        places = max(12, 11 - exponent)
        q = d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN)
    return format(q, "f")


def parse_instance_data(data: Any) -> Instance:
    if not isinstance(data, dict):
        raise InstanceFormatError("instance must be a JSON object")
    c = parse_number(data.get("covering_length", "1"), "covering_length")
    if c <= 0:
        raise InstanceFormatError(f"covering_length must be positive, got {format_number(c)}")
    raw = data.get("agents")
    if not isinstance(raw, list):
        raise InstanceFormatError("agents must be a list")
    if not raw:
        raise InstanceFormatError("empty agent list")
    agents = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict) or "s" not in entry:
            raise InstanceFormatError(f"agent {i}: expected an object with an 's' field")
        s = parse_number(entry["s"], f"agent {i} s")
        length = parse_number(entry.get("length", "1"), f"agent {i} length")
        if length <= 0:
            raise InstanceFormatError(f"agent {i}: non-positive length {format_number(length)}")
        agent_id = entry.get("id", i)
        if isinstance(agent_id, bool) or not isinstance(agent_id, int):
            raise InstanceFormatError(f"agent {i}: id must be an integer")
        agents.append(AgentInterval(agent_id, s, length))
    try:
        return Instance(tuple(agents), c)
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from None


def parse_instance(text: str) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from None
    return parse_instance_data(data)


def instance_data(inst: Instance) -> dict:
    return {
        "covering_length": format_number(inst.covering_length),
        "agents": [{"id": a.id, "s": format_number(a.s), "length": format_number(a.length)}
                   for a in inst.agents],
    }


def serialize_instance(inst: Instance) -> str:
    return json.dumps(instance_data(inst), indent=2) + "\n"


def instance_digest(inst: Instance) -> str:
    canonical = json.dumps(instance_data(inst), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()[:16]


def output_data(output: Placement | Lottery) -> Any:
    if isinstance(output, Lottery):
        return [{"s": format_number(p.s), "p": format_number(q)} for p, q in output]
    return {"s": format_number(output.s)}


def parse_lottery(data: Any) -> Lottery:
    return Lottery(tuple((Placement(parse_number(e["s"], "s")), parse_number(e["p"], "p")) for e in data))


def number_fields(name: str, value) -> dict:
    """``{name: "p/q", name_decimal: "..."}``; non-numeric states pass through as text."""
    if isinstance(value, Fraction):
        return {name: format_number(value), f"{name}_decimal": render_decimal(value)}
    return {name: str(value), f"{name}_decimal": str(value)}


def _flat(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        if value and isinstance(value[0], dict):
            return ";".join(":".join(str(v) for v in item.values()) for item in value)
        return ";".join(_flat(v) for v in value)
    if isinstance(value, dict):
        return ";".join(f"{k}={_flat(v)}" for k, v in value.items())
    return "" if value is None else str(value)


def render(reports: list[dict], fmt: str) -> str:
    if fmt == "json":
        body = reports[0] if len(reports) == 1 else reports
        return json.dumps(body, indent=2) + "\n"
    if fmt == "csv":
        columns: list[str] = []
        for r in reports:
            for k in r:
                if k not in columns:
                    columns.append(k)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in reports:
            writer.writerow([_flat(r.get(k)) for k in columns])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")
