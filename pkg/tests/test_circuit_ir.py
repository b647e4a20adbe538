import pytest

from surfenc.circuit_ir import Circuit, Instruction


def cx(*targets):
    return Instruction("CX", targets)


def test_instruction_validation():
    with pytest.raises(ValueError):
        Instruction("CZ", (0, 1))
    with pytest.raises(ValueError):
        Instruction("CX", (0, 1, 2))
    with pytest.raises(ValueError):
        Instruction("X_ERROR", (0,))  # missing probability
    with pytest.raises(ValueError):
        Instruction("X_ERROR", (0,), 1.5)
    with pytest.raises(ValueError):
        Instruction("M", (0,), 0.1)  # measurements take no argument
    with pytest.raises(ValueError):
        Instruction("R", ())


def test_layer_exclusivity():
    Circuit(3, [[cx(0, 1), Instruction("R", (2,))]])
    with pytest.raises(ValueError):
        Circuit(3, [[cx(0, 1), cx(1, 2)]])
    # noise is exempt: annotates the gate rather than occupying the slot
    Circuit(4, [[cx(0, 1), Instruction("DEPOLARIZE2", (0, 1), 0.01), cx(2, 3)]])


def test_target_bounds():
    with pytest.raises(ValueError):
        Circuit(2, [[cx(0, 2)]])


def test_counters():
    c = Circuit(
        4,
        [
            [Instruction("R", (0, 1, 2, 3)), Instruction("X_ERROR", (0, 1, 2, 3), 0.0)],
            [cx(0, 1), Instruction("DEPOLARIZE2", (0, 1), 0.0), cx(2, 3)],
            [cx(1, 2)],
            [Instruction("Z_ERROR", (0,), 0.5)],
            [Instruction("M", (0, 1))],
        ],
    )
    assert c.gate_count == 3
    assert c.entangling_depth == 2
    assert c.depth == 4  # noise-only layer does not count


def test_multi_pair_cx_counts_pairwise():
    c = Circuit(4, [[Instruction("CX", (0, 1, 2, 3))]])
    assert c.gate_count == 2
    assert c.entangling_depth == 1


def test_text_roundtrip():
    c = Circuit(
        3,
        [
            [Instruction("RX", (0,)), Instruction("Z_ERROR", (0,), 0.001)],
            [cx(0, 1), Instruction("DEPOLARIZE2", (0, 1), 0.001)],
            [Instruction("MX", (0,))],
        ],
        metadata={"scheme": "ue", "distance": "3"},
    )
    text = c.to_text()
    assert "# qubits: 3" in text
    assert "DEPOLARIZE2(0.001) 0 1" in text
    assert text.count("TICK") == 2
    back = Circuit.from_text(text)
    assert back == c


def test_probability_formatting_survives_roundtrip():
    # repr keeps the float exact, so parsing returns the same bits
    p = 0.1 + 0.2
    c = Circuit(1, [[Instruction("R", (0,)), Instruction("X_ERROR", (0,), p)]])
    back = Circuit.from_text(c.to_text())
    assert back.layers[0][1].arg == p


def test_parse_errors():
    with pytest.raises(ValueError):
        Circuit.from_text("R 0\n")  # missing qubits header
    with pytest.raises(ValueError):
        Circuit.from_text("# qubits: 2\nBADTOKEN 0\n")
    with pytest.raises(ValueError):
        Circuit.from_text("# qubits 2\nR 0\n")


def test_instructions_iterator_order():
    c = Circuit(2, [[cx(0, 1)], [Instruction("M", (0,)), Instruction("M", (1,))]])
    seq = [(k, i.name) for k, i in c.instructions()]
    assert seq == [(0, "CX"), (1, "M"), (1, "M")]
