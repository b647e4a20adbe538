"""Time-sliced circuit representation with a stable text format.

A circuit is a sequence of layers. Within a layer every qubit may be touched
by at most one non-noise instruction; noise instructions are exempt because
they annotate the gate or reset they follow rather than occupying time.

Supported instructions:

    CX a b [c d ...]        controlled-NOT on pairs (control, target)
    R q ...                 reset to |0>
    RX q ...                reset to |+>
    M q ...                 Z-basis measurement
    MX q ...                X-basis measurement
    DEPOLARIZE2(p) a b ...  two-qubit depolarizing noise on pairs
    X_ERROR(p) q ...        independent X flip per qubit
    Z_ERROR(p) q ...        independent Z flip per qubit

The text format is line-oriented: `# key: value` header lines, one
instruction per line, `TICK` between consecutive layers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

NOISE_NAMES = frozenset({"DEPOLARIZE2", "X_ERROR", "Z_ERROR"})
PAIRWISE_NAMES = frozenset({"CX", "DEPOLARIZE2"})
RESET_NAMES = frozenset({"R", "RX"})
MEASURE_NAMES = frozenset({"M", "MX"})
KNOWN_NAMES = NOISE_NAMES | RESET_NAMES | MEASURE_NAMES | {"CX"}


@dataclass(frozen=True)
class Instruction:
    name: str
    targets: tuple[int, ...]
    arg: float | None = None

    def __post_init__(self):
        if self.name not in KNOWN_NAMES:
            raise ValueError(f"unknown instruction name: {self.name!r}")
        if not self.targets:
            raise ValueError(f"{self.name}: at least one target required")
        if self.name in PAIRWISE_NAMES and len(self.targets) % 2:
            raise ValueError(f"{self.name}: targets must come in pairs")
        if self.name in NOISE_NAMES:
            if self.arg is None or not 0.0 <= self.arg <= 1.0:
                raise ValueError(f"{self.name}: probability in [0, 1] required")
        elif self.arg is not None:
            raise ValueError(f"{self.name}: takes no argument")

    @property
    def is_noise(self) -> bool:
        return self.name in NOISE_NAMES

    def pairs(self) -> list[tuple[int, int]]:
        if self.name not in PAIRWISE_NAMES:
            raise ValueError(f"{self.name} is not a pairwise instruction")
        return [
            (self.targets[i], self.targets[i + 1])
            for i in range(0, len(self.targets), 2)
        ]

    def to_text(self) -> str:
        head = self.name if self.arg is None else f"{self.name}({self.arg!r})"
        return head + " " + " ".join(str(t) for t in self.targets)


@dataclass
class Circuit:
    n_qubits: int
    layers: list[list[Instruction]] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.n_qubits <= 0:
            raise ValueError("n_qubits must be positive")
        for k, layer in enumerate(self.layers):
            touched: set[int] = set()
            for instr in layer:
                bad = [t for t in instr.targets if not 0 <= t < self.n_qubits]
                if bad:
                    raise ValueError(
                        f"layer {k}: target {bad[0]} outside 0..{self.n_qubits - 1}"
                    )
                if instr.is_noise:
                    continue
                for t in instr.targets:
                    if t in touched:
                        raise ValueError(
                            f"layer {k}: qubit {t} touched by two instructions"
                        )
                    touched.add(t)

    def instructions(self):
        """Yield (layer_index, instruction) in execution order."""
        for k, layer in enumerate(self.layers):
            for instr in layer:
                yield k, instr

    @property
    def depth(self) -> int:
        """Number of layers containing at least one non-noise instruction."""
        return sum(
            1 for layer in self.layers if any(not i.is_noise for i in layer)
        )

    @property
    def entangling_depth(self) -> int:
        return sum(
            1 for layer in self.layers if any(i.name == "CX" for i in layer)
        )

    @property
    def gate_count(self) -> int:
        """Total number of CX gates (instruction targets counted pairwise)."""
        return sum(
            len(i.targets) // 2
            for _, i in self.instructions()
            if i.name == "CX"
        )

    def to_text(self) -> str:
        lines = [f"# qubits: {self.n_qubits}"]
        for key, value in self.metadata.items():
            lines.append(f"# {key}: {value}")
        for k, layer in enumerate(self.layers):
            if k:
                lines.append("TICK")
            for instr in layer:
                lines.append(instr.to_text())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Circuit":
        n_qubits = None
        metadata: dict = {}
        layers: list[list[Instruction]] = [[]]
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                m = re.match(r"#\s*([^:]+?)\s*:\s*(.*)$", line)
                if not m:
                    raise ValueError(f"line {lineno}: malformed header {line!r}")
                key, value = m.group(1), m.group(2)
                if key == "qubits":
                    n_qubits = int(value)
                else:
                    metadata[key] = value
                continue
            if line == "TICK":
                layers.append([])
                continue
            layers[-1].append(_parse_instruction(line, lineno))
        if n_qubits is None:
            raise ValueError("missing '# qubits: N' header")
        if layers and not layers[-1]:
            layers.pop()
        return cls(n_qubits=n_qubits, layers=layers, metadata=metadata)


_INSTRUCTION_RE = re.compile(
    r"^([A-Z][A-Z0-9_]*)(?:\(([^()]+)\))?((?:\s+\d+)+)$"
)


def _parse_instruction(line: str, lineno: int) -> Instruction:
    m = _INSTRUCTION_RE.match(line)
    if not m:
        raise ValueError(f"line {lineno}: cannot parse instruction {line!r}")
    name, arg, targets = m.group(1), m.group(2), m.group(3)
    return Instruction(
        name=name,
        targets=tuple(int(t) for t in targets.split()),
        arg=None if arg is None else float(arg),
    )
