"""Circuit intermediate representation and its text format.

A circuit is an ordered list of gate applications over ``num_qubits`` wires.
List order is execution order: ``gates[0]`` acts first.

Text format (one gate per line, ``#`` starts a comment, blank lines ignored)::

    qubits 3
    H 0
    RY(1.5707963267948966) 2   # angles in radians, parenthesized
    CCZ 0 1 2

Gate names are case-insensitive on input; canonical output is uppercase with
angles printed to 17 significant digits (enough to round-trip a double).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable


class CircuitError(ValueError):
    """Raised for malformed circuits, gates, or circuit text."""


class Gate(Enum):
    """Gate vocabulary tags, in canonical declaration order."""

    H = "H"
    X = "X"
    Y = "Y"
    Z = "Z"
    S = "S"
    SDG = "SDG"
    RX = "RX"
    RY = "RY"
    RZ = "RZ"
    CZ = "CZ"
    CS = "CS"
    CRY = "CRY"
    CCZ = "CCZ"

    @property
    def arity(self) -> int:
        if self in (Gate.CZ, Gate.CS, Gate.CRY):
            return 2
        if self is Gate.CCZ:
            return 3
        return 1

    @property
    def takes_angle(self) -> bool:
        return self in (Gate.RX, Gate.RY, Gate.RZ, Gate.CRY)

    @property
    def symmetric(self) -> bool:
        # Operand order is cosmetic for these; stored as written.
        return self in (Gate.CZ, Gate.CCZ)


@dataclass(frozen=True)
class GateKind:
    """A gate tag plus its angle, present exactly for the rotation tags."""

    gate: Gate
    angle: float | None = None

    def __post_init__(self) -> None:
        if self.gate.takes_angle:
            if self.angle is None:
                raise CircuitError(f"{self.gate.value} requires an angle")
            if not math.isfinite(self.angle):
                raise CircuitError(f"{self.gate.value} angle must be finite")
        elif self.angle is not None:
            raise CircuitError(f"{self.gate.value} takes no angle")


@dataclass(frozen=True)
class GateApp:
    """A gate kind applied to a tuple of distinct wire indices."""

    kind: GateKind
    qubits: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "qubits", tuple(self.qubits))
        want = self.kind.gate.arity
        if len(self.qubits) != want:
            raise CircuitError(
                f"{self.kind.gate.value} expects {want} operand(s), got {len(self.qubits)}"
            )
        if any(q < 0 for q in self.qubits):
            raise CircuitError("operand indices must be non-negative")
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(f"duplicate operands in {self.kind.gate.value} {self.qubits}")


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    gates: tuple[GateApp, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.num_qubits < 1:
            raise CircuitError("num_qubits must be positive")
        for i, g in enumerate(self.gates):
            if max(g.qubits) >= self.num_qubits:
                raise CircuitError(
                    f"gate {i} ({g.kind.gate.value}) uses qubit {max(g.qubits)} "
                    f"but circuit has {self.num_qubits}"
                )


# Convenience constructors, handy when building circuits in code.
def _plain(gate: Gate) -> Callable[..., GateApp]:
    def make(*qubits: int) -> GateApp:
        return GateApp(GateKind(gate), qubits)

    return make


def _rot(gate: Gate) -> Callable[..., GateApp]:
    def make(angle: float, *qubits: int) -> GateApp:
        return GateApp(GateKind(gate, float(angle)), qubits)

    return make


h = _plain(Gate.H)
x = _plain(Gate.X)
y = _plain(Gate.Y)
z = _plain(Gate.Z)
s = _plain(Gate.S)
sdg = _plain(Gate.SDG)
cz = _plain(Gate.CZ)
cs = _plain(Gate.CS)
ccz = _plain(Gate.CCZ)
rx = _rot(Gate.RX)
ry = _rot(Gate.RY)
rz = _rot(Gate.RZ)
cry = _rot(Gate.CRY)


def semantically_equal(a: GateApp, b: GateApp) -> bool:
    """Structural equality, except symmetric gates compare operands set-wise."""
    if a.kind != b.kind:
        return False
    if a.kind.gate.symmetric:
        return set(a.qubits) == set(b.qubits)
    return a.qubits == b.qubits


@dataclass(frozen=True)
class GateSetProfile:
    """A named gate set; ``admits`` decides membership per tag."""

    name: str
    admits: Callable[[Gate], bool] = field(compare=False)

    def tags(self) -> tuple[Gate, ...]:
        return tuple(g for g in Gate if self.admits(g))


HCCZ = GateSetProfile("HCCZ", lambda g: g in (Gate.H, Gate.CCZ))
HCS = GateSetProfile("HCS", lambda g: g in (Gate.H, Gate.CS))
REAL_O2_CCZ = GateSetProfile(
    "REAL_O2_CCZ", lambda g: g in (Gate.H, Gate.X, Gate.Z, Gate.RY, Gate.CCZ)
)
FULL = GateSetProfile("FULL", lambda g: True)

PROFILES: dict[str, GateSetProfile] = {
    p.name: p for p in (HCCZ, HCS, REAL_O2_CCZ, FULL)
}


@dataclass(frozen=True)
class Violation:
    """A gate outside a profile: its index in the circuit and its tag."""

    index: int
    gate: Gate


def check_membership(c: Circuit, profile: GateSetProfile) -> list[Violation]:
    """Return all gates of ``c`` not admitted by ``profile`` (empty = member)."""
    return [
        Violation(i, g.kind.gate)
        for i, g in enumerate(c.gates)
        if not profile.admits(g.kind.gate)
    ]


def gate_counts(c: Circuit) -> dict[Gate, int]:
    """Count per tag; tags absent from the circuit map to 0."""
    counts = {g: 0 for g in Gate}
    for app in c.gates:
        counts[app.kind.gate] += 1
    return counts


_GATE_LINE = re.compile(r"^(?P<name>[A-Za-z]+)(?:\((?P<angle>[^()]*)\))?$")


def _parse_angle(token: str, line_no: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise CircuitError(f"line {line_no}: unparseable angle {token!r}") from None
    if not math.isfinite(value):
        raise CircuitError(f"line {line_no}: angle must be finite, got {token!r}")
    return value


def parse_circuit(text: str) -> Circuit:
    """Parse the text format described in the module docstring."""
    header: int | None = None
    apps: list[GateApp] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if header is None:
            if tokens[0].lower() != "qubits" or len(tokens) != 2:
                raise CircuitError(f"line {line_no}: expected 'qubits <n>' header")
            try:
                header = int(tokens[1])
            except ValueError:
                raise CircuitError(f"line {line_no}: bad qubit count {tokens[1]!r}") from None
            if header < 1:
                raise CircuitError(f"line {line_no}: qubit count must be positive")
            continue
        m = _GATE_LINE.match(tokens[0])
        if m is None:
            raise CircuitError(f"line {line_no}: malformed gate token {tokens[0]!r}")
        name = m.group("name").upper()
        try:
            gate = Gate[name]
        except KeyError:
            raise CircuitError(f"line {line_no}: unknown gate {m.group('name')!r}") from None
        angle_token = m.group("angle")
        if gate.takes_angle and angle_token is None:
            raise CircuitError(f"line {line_no}: {gate.value} requires an angle")
        if not gate.takes_angle and angle_token is not None:
            raise CircuitError(f"line {line_no}: {gate.value} takes no angle")
        angle = _parse_angle(angle_token, line_no) if angle_token is not None else None
        operands: list[int] = []
        for tok in tokens[1:]:
            try:
                operands.append(int(tok))
            except ValueError:
                raise CircuitError(f"line {line_no}: bad operand {tok!r}") from None
        try:
            apps.append(GateApp(GateKind(gate, angle), tuple(operands)))
        except CircuitError as exc:
            raise CircuitError(f"line {line_no}: {exc}") from None
    if header is None:
        raise CircuitError("missing 'qubits <n>' header")
    try:
        return Circuit(header, tuple(apps))
    except CircuitError as exc:
        raise CircuitError(str(exc)) from None


def _format_angle(angle: float) -> str:
    return f"{angle:.17g}"


def serialize_circuit(c: Circuit) -> str:
    """Canonical text: uppercase names, 17-significant-digit angles."""
    lines = [f"qubits {c.num_qubits}"]
    for app in c.gates:
        name = app.kind.gate.value
        if app.kind.angle is not None:
            name = f"{name}({_format_angle(app.kind.angle)})"
        lines.append(" ".join([name, *map(str, app.qubits)]))
    return "\n".join(lines)


def circuit_of(num_qubits: int, *gates: GateApp) -> Circuit:
    return Circuit(num_qubits, gates)
