"""Problem and witness file formats.

Problem files hold one block per problem:

    problem NAME
      d_id N
      instance PREFIX,TAILBIT
        solution PREFIX,TAILBIT
      ...
    end

    medvedev NAME
      element PREFIX,TAILBIT
      ...
    end

    composite NAME = OP LHS RHS        # OP: coproduct | meet | strong_join

Streams are eventually constant, written as prefix,tailbit with the prefix
in index order (possibly empty).  Witness files hold blocks:

    witness NAME
      kind sW                          # or W
      source SRC
      target TGT
      forward EXPR
      backward EXPR
    end

printed output parses back to bit-identical content.
"""

from __future__ import annotations

from .bits import BitStream, Diverged, EventuallyConstant, query
from .problems import Problem, finite_problem, medvedev_problem
from .operations import coproduct, meet, strong_join
from .witnesses import ReductionWitness, SW, W
from .exprs import ParseError, parse_functional

_OPERATORS = {"coproduct": coproduct, "meet": meet, "strong_join": strong_join}


def to_ec_spec(stream: BitStream, scan: int = 64, fuel: int = 10**5) -> str:
    """Render an eventually constant stream as PREFIX,TAILBIT."""
    if isinstance(stream, EventuallyConstant):
        return f"{stream.prefix},{stream.tail}"
    bits = []
    for k in range(scan):
        b = query(stream, k, fuel)
        if isinstance(b, Diverged):
            raise ValueError("stream diverges; cannot render as prefix,tail")
        bits.append(b)
    tail = bits[-1]
    cut = scan
    while cut > 0 and bits[cut - 1] == tail:
        cut -= 1
    return "".join("01"[b] for b in bits[:cut]) + f",{tail}"


def parse_ec_spec(text: str) -> EventuallyConstant:
    if "," not in text:
        raise ParseError(f"expected PREFIX,TAILBIT, got {text!r}")
    prefix, tail = text.rsplit(",", 1)
    if tail not in ("0", "1") or any(c not in "01" for c in prefix):
        raise ParseError(f"bad stream spec {text!r}")
    return EventuallyConstant(prefix, int(tail))


def _strip(lines):
    for raw in lines:
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line


def parse_problem_file(text: str) -> dict[str, Problem]:
    """Parse every block; composites may reference earlier names."""
    problems: dict[str, Problem] = {}
    lines = list(_strip(text.splitlines()))
    i = 0
    while i < len(lines):
        head = lines[i].split()
        if head[0] == "problem":
            if len(head) != 2:
                raise ParseError(f"bad problem header: {lines[i]!r}")
            name = head[1]
            i += 1
            d_id = None
            pairs = []
            while i < len(lines) and lines[i] != "end":
                parts = lines[i].split()
                if parts[0] == "d_id":
                    d_id = int(parts[1])
                elif parts[0] == "instance":
                    pairs.append((parse_ec_spec(parts[1]), []))
                elif parts[0] == "solution":
                    if not pairs:
                        raise ParseError("solution before any instance")
                    pairs[-1][1].append(parse_ec_spec(parts[1]))
                else:
                    raise ParseError(f"unexpected line in problem block: {lines[i]!r}")
                i += 1
            if i == len(lines):
                raise ParseError(f"problem {name} not closed with end")
            if d_id is None:
                raise ParseError(f"problem {name} lacks d_id")
            problems[name] = finite_problem(name, pairs, d_id)
            i += 1
        elif head[0] == "medvedev":
            name = head[1]
            i += 1
            elements = []
            while i < len(lines) and lines[i] != "end":
                parts = lines[i].split()
                if parts[0] != "element":
                    raise ParseError(f"unexpected line in medvedev block: {lines[i]!r}")
                elements.append(parse_ec_spec(parts[1]))
                i += 1
            if i == len(lines):
                raise ParseError(f"medvedev {name} not closed with end")
            problems[name] = medvedev_problem(name, elements)
            i += 1
        elif head[0] == "composite":
            # composite NAME = OP LHS RHS
            if len(head) != 6 or head[2] != "=":
                raise ParseError(f"bad composite line: {lines[i]!r}")
            name, op, lhs, rhs = head[1], head[3], head[4], head[5]
            if op not in _OPERATORS:
                raise ParseError(f"unknown operator {op!r}")
            if lhs not in problems or rhs not in problems:
                raise ParseError(f"composite {name} references unknown problems")
            problems[name] = _OPERATORS[op](problems[lhs], problems[rhs], name)
            i += 1
        else:
            raise ParseError(f"unexpected top-level line: {lines[i]!r}")
    return problems


def print_problem_file(problems: dict[str, Problem]) -> str:
    out = []
    for name, p in problems.items():
        operator = getattr(p, "operator", None)
        if operator is not None:
            out.append(f"composite {name} = {operator} {p.left.name} {p.right.name}")
            continue
        if hasattr(p, "mass_elements"):
            out.append(f"medvedev {name}")
            for e in p.mass_elements:
                out.append(f"  element {to_ec_spec(e)}")
            out.append("end")
            continue
        out.append(f"problem {name}")
        out.append(f"  d_id {p.d_id}")
        for idx, inst in enumerate(p.instances):
            out.append(f"  instance {to_ec_spec(inst)}")
            for sol in p.solutions(idx):
                out.append(f"    solution {to_ec_spec(sol)}")
        out.append("end")
    return "\n".join(out) + "\n"


def parse_witness_file(text: str) -> dict[str, ReductionWitness]:
    witnesses: dict[str, ReductionWitness] = {}
    lines = list(_strip(text.splitlines()))
    i = 0
    while i < len(lines):
        head = lines[i].split()
        if head[0] != "witness" or len(head) != 2:
            raise ParseError(f"expected witness block, got {lines[i]!r}")
        name = head[1]
        fields = {}
        i += 1
        while i < len(lines) and lines[i] != "end":
            key, _, value = lines[i].partition(" ")
            fields[key] = value.strip()
            i += 1
        if i == len(lines):
            raise ParseError(f"witness {name} not closed with end")
        i += 1
        for key in ("kind", "source", "target", "forward", "backward"):
            if key not in fields:
                raise ParseError(f"witness {name} lacks {key}")
        if fields["kind"] not in (SW, W):
            raise ParseError(f"witness {name}: kind must be sW or W")
        witnesses[name] = ReductionWitness(
            fields["kind"],
            parse_functional(fields["forward"]),
            parse_functional(fields["backward"]),
            fields["source"],
            fields["target"],
        )
    return witnesses


def print_witness_file(witnesses: dict[str, ReductionWitness]) -> str:
    out = []
    for name, w in witnesses.items():
        out.append(f"witness {name}")
        out.append(f"  kind {w.kind}")
        out.append(f"  source {w.source}")
        out.append(f"  target {w.target}")
        out.append(f"  forward {w.forward.expr()}")
        out.append(f"  backward {w.backward.expr()}")
        out.append("end")
    return "\n".join(out) + "\n"
