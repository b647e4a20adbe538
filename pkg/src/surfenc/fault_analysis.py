"""Exhaustive fault enumeration over noisy encoding circuits.

Every noise instruction defines fault sites: one per qubit for single-qubit
flip channels, one per pair for two-qubit depolarizing (with 15 basis
faults).  A single backward sweep computes, for every qubit q, the final
image of an X or Z inserted at the current position; recording the images at
each noise site yields all single-fault residuals in one pass.  Residuals of
fault combinations are XORs of the single-fault residuals.

A residual is judged against the preparation target: for logical |0> the
protected component is the X part on data (it can flip logical Z), decoded
through the Z-check syndrome; logical |+> is the dual.  A combination fails
if after minimum-weight matching the corrected residual still flips the
protected logical.  For measurement-based circuits, residual Paulis on a
measured ancilla anticommuting with its readout basis count as outcome
flips, entering the syndrome of the measured check kind.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit_ir import Circuit
from .code_model import SurfaceCode
from .decoder import SyndromeDecoder
from .encoders import (
    EncodingPlan,
    Scheme,
    Target,
    gadget_gates,
    measure_block_gates,
    prepared_check_kind,
)

_PAULI_LETTER = "IXZY"


def _letter(x: int, z: int) -> str:
    return _PAULI_LETTER[x + 2 * z]


@dataclass(frozen=True)
class FaultSite:
    """One elementary noise channel: a flip qubit or a depolarizing pair."""

    index: int
    layer: int
    channel: str
    qubits: tuple[int, ...]

    def describe(self, basis: str) -> str:
        qs = ",".join(str(q) for q in self.qubits)
        return f"L{self.layer}:{self.channel}({qs}):{basis}"


@dataclass(frozen=True)
class BasisFault:
    site: FaultSite
    basis: str
    res_x: int
    res_z: int


def backward_images(circuit: Circuit) -> list[BasisFault]:
    """All single basis faults with their end-of-circuit residuals."""
    n = circuit.n_qubits
    img_x = [1 << q for q in range(n)]
    img_z = [1 << q for q in range(n)]
    recorded: list[tuple[int, str, tuple[int, ...], list[tuple[str, int, int]]]] = []

    for layer, instr in reversed(list(circuit.instructions())):
        name = instr.name
        if name == "CX":
            for c, t in reversed(instr.pairs()):
                img_x[c] ^= img_x[t]
                img_z[t] ^= img_z[c]
        elif name in ("R", "RX"):
            for q in instr.targets:
                img_x[q] = 0
                img_z[q] = 0
        elif name == "M":
            # Z before a Z-basis readout is absorbed; X flips the outcome
            # and survives as the bit at the measured qubit.
            for q in instr.targets:
                img_z[q] = 0
        elif name == "MX":
            for q in instr.targets:
                img_x[q] = 0
        elif name == "DEPOLARIZE2":
            # record in reversed qubit order so the final global reverse
            # leaves sites in forward reading order
            for a, b in reversed(instr.pairs()):
                faults = []
                for k in range(1, 16):
                    xa, za = (k >> 3) & 1, (k >> 2) & 1
                    xb, zb = (k >> 1) & 1, k & 1
                    rx = (img_x[a] if xa else 0) ^ (img_x[b] if xb else 0)
                    rz = (img_z[a] if za else 0) ^ (img_z[b] if zb else 0)
                    faults.append((_letter(xa, za) + _letter(xb, zb), rx, rz))
                recorded.append((layer, name, (a, b), faults))
        elif name == "X_ERROR":
            for q in reversed(instr.targets):
                recorded.append((layer, name, (q,), [("X", img_x[q], 0)]))
        elif name == "Z_ERROR":
            for q in reversed(instr.targets):
                recorded.append((layer, name, (q,), [("Z", 0, img_z[q])]))
        else:
            raise ValueError(f"unsupported instruction {name}")

    recorded.reverse()
    out: list[BasisFault] = []
    for idx, (layer, channel, qubits, faults) in enumerate(recorded):
        site = FaultSite(idx, layer, channel, qubits)
        for basis, rx, rz in faults:
            out.append(BasisFault(site, basis, rx, rz))
    return out


@dataclass(frozen=True)
class SyndromeMap:
    """Packs a residual Pauli into (syndrome int, logical parity)."""

    check_masks: tuple[int, ...]
    logical_mask: int
    protected_axis: str  # 'X' or 'Z': which residual component is read

    def extract(self, res_x: int, res_z: int) -> tuple[int, int]:
        res = res_x if self.protected_axis == "X" else res_z
        syn = 0
        for i, m in enumerate(self.check_masks):
            if (res & m).bit_count() % 2:
                syn |= 1 << i
        return syn, (res & self.logical_mask).bit_count() % 2


def build_syndrome_map(
    code: SurfaceCode,
    target: Target,
    scheme: Scheme,
    complementary: bool = False,
) -> SyndromeMap:
    zero = target is Target.ZERO
    harmful_axis = "X" if zero else "Z"
    detect_kind = "Z" if zero else "X"
    logical = code.logical_z if zero else code.logical_x
    if complementary:
        harmful_axis = "Z" if zero else "X"
        detect_kind = "X" if zero else "Z"
        logical = code.logical_x if zero else code.logical_z
    measured_kind = prepared_check_kind(target) if scheme is Scheme.ME else None
    masks = []
    for c in code.checks(detect_kind):
        m = 0
        for q in c.support:
            m |= 1 << q
        if c.kind == measured_kind:
            m |= 1 << c.ancilla  # residual there flips the recorded outcome
        masks.append(m)
    lmask = 0
    for q in logical:
        lmask |= 1 << q
    return SyndromeMap(tuple(masks), lmask, harmful_axis)


@dataclass
class FaultReport:
    variant: str
    d: int
    scheme: str
    target: str
    analysis: str  # 'protected' or 'complementary'
    max_weight_checked: int
    n_sites: int
    n_basis_faults: int
    failing_combinations: list[tuple[str, ...]]
    certified_fault_distance_lower_bound: int

    def summary(self) -> str:
        head = (
            f"{self.variant} d={self.d} {self.scheme}/{self.target} "
            f"[{self.analysis}] sites={self.n_sites} "
            f"basis_faults={self.n_basis_faults} checked<=w{self.max_weight_checked}"
        )
        if not self.failing_combinations:
            return (
                f"{head}: no failures, fault distance >= "
                f"{self.certified_fault_distance_lower_bound}"
            )
        return (
            f"{head}: {len(self.failing_combinations)} failing combinations, "
            f"first {self.failing_combinations[0]}"
        )


def _decode_parities(decoder: SyndromeDecoder, syndromes: np.ndarray) -> np.ndarray:
    out = np.empty(len(syndromes), dtype=np.uint8)
    for i, s in enumerate(syndromes):
        _, lp = decoder.decode_syndrome(int(s))
        out[i] = lp
    return out


def analyze_faults(
    circuit: Circuit,
    code: SurfaceCode,
    target: Target,
    scheme: Scheme,
    max_weight: int = 1,
    complementary: bool = False,
    decoder: SyndromeDecoder | None = None,
) -> FaultReport:
    """Exhaustively test all fault combinations up to max_weight (1 or 2).

    Pairs combine basis faults from two distinct sites (two faults inside
    one depolarizing channel are mutually exclusive outcomes of a single
    event, so same-site pairs are excluded).
    """
    if max_weight not in (1, 2):
        raise ValueError("max_weight must be 1 or 2")
    smap = build_syndrome_map(code, target, scheme, complementary)
    if decoder is None:
        axis_target = "zero" if smap.protected_axis == "X" else "plus"
        decoder = SyndromeDecoder(code, axis_target)
    faults = backward_images(circuit)
    n_sites = len({f.site.index for f in faults})

    syn = np.empty(len(faults), dtype=np.uint64)
    lpar = np.empty(len(faults), dtype=np.uint8)
    site_ids = np.empty(len(faults), dtype=np.int32)
    for i, f in enumerate(faults):
        s, lp = smap.extract(f.res_x, f.res_z)
        syn[i] = s
        lpar[i] = lp
        site_ids[i] = f.site.index

    failing: list[tuple[str, ...]] = []

    uniq, inv = np.unique(syn, return_inverse=True)
    corr_lpar = _decode_parities(decoder, uniq)
    single_fail = (lpar ^ corr_lpar[inv]) == 1
    for i in np.nonzero(single_fail)[0]:
        f = faults[i]
        failing.append((f.site.describe(f.basis),))

    if max_weight == 2:
        pair_syn = syn[:, None] ^ syn[None, :]
        pair_lpar = lpar[:, None] ^ lpar[None, :]
        valid = np.triu(np.ones(len(faults), dtype=bool), k=1)
        valid &= site_ids[:, None] != site_ids[None, :]
        uniq2, inv2 = np.unique(pair_syn[valid], return_inverse=True)
        corr2 = _decode_parities(decoder, uniq2)
        fail_flat = (pair_lpar[valid] ^ corr2[inv2]) == 1
        ii, jj = np.nonzero(valid)
        for idx in np.nonzero(fail_flat)[0]:
            a, b = faults[ii[idx]], faults[jj[idx]]
            failing.append((a.site.describe(a.basis), b.site.describe(b.basis)))

    if failing:
        bound = min(len(c) for c in failing)
    else:
        bound = max_weight + 1
    return FaultReport(
        variant=code.variant.value,
        d=code.d,
        scheme=scheme.value,
        target=target.value,
        analysis="complementary" if complementary else "protected",
        max_weight_checked=max_weight,
        n_sites=n_sites,
        n_basis_faults=len(faults),
        failing_combinations=failing,
        certified_fault_distance_lower_bound=bound,
    )


@dataclass(frozen=True)
class HookFault:
    """A depolarizing fault inside one fan, propagated to the fan's end."""

    gate_index: int
    basis: str
    protected_data: tuple[int, ...]
    protected_reduced_weight: int
    complementary_data: tuple[int, ...]


def _propagate_masks(
    gates: list[tuple[int, int]], start: int, x: int, z: int
) -> tuple[int, int]:
    for c, t in gates[start:]:
        if (x >> c) & 1:
            x ^= 1 << t
        if (z >> t) & 1:
            z ^= 1 << c
    return x, z


def hook_catalogue(plan: EncodingPlan) -> dict[int, list[HookFault]]:
    """Per-check catalogue of all depolarizing faults inside its own fan.

    Residuals are taken at the end of the fan, split into the protected and
    complementary components on data, and the protected one is reduced
    modulo the fan's own check (whichever representative is lighter).
    """
    code = plan.code
    kind = plan.kind
    zero = plan.target is Target.ZERO
    data_mask = 0
    for q in code.data_ids:
        data_mask |= 1 << q

    out: dict[int, list[HookFault]] = {}
    if plan.scheme is Scheme.ME:
        units = [(b.check, measure_block_gates(b)) for b in plan.blocks]
    else:
        units = [
            (g.check, gadget_gates(g, kind)) for stage in plan.stages for g in stage
        ]
    for check, gates in units:
        cmask = 0
        for q in check.support:
            cmask |= 1 << q
        entries = []
        for gi, (c, t) in enumerate(gates):
            for k in range(1, 16):
                xa, za = (k >> 3) & 1, (k >> 2) & 1
                xb, zb = (k >> 1) & 1, k & 1
                x0 = (xa << c) | (xb << t)
                z0 = (za << c) | (zb << t)
                x, z = _propagate_masks(gates, gi + 1, x0, z0)
                prot = (x if zero else z) & data_mask
                comp = (z if zero else x) & data_mask
                reduced = min(prot.bit_count(), (prot ^ cmask).bit_count())
                entries.append(
                    HookFault(
                        gate_index=gi,
                        basis=_letter(xa, za) + _letter(xb, zb),
                        protected_data=_bits(prot),
                        protected_reduced_weight=reduced,
                        complementary_data=_bits(comp),
                    )
                )
        out[check.ancilla] = entries
    return out


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    q = 0
    while mask:
        if mask & 1:
            out.append(q)
        mask >>= 1
        q += 1
    return tuple(out)
