import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qfa.circuit import depth, gate_counts, transpile
from qfa.dyadic import Dyadic
from qfa.encoder import EncoderConfig, encode_sbp, encode_sbp_inplace, order_monomials, qft, synthesize, u_g_angles
from qfa.errors import AncillaError, NonIntegerPolynomialError, RegisterError
from qfa.sbpoly import SBPolynomial, VarId, assignment
from qfa.simulator import assert_equiv, basis_outputs, input_index, logical_unitary, read_register

CONFIGS = [
    EncoderConfig(),
    EncoderConfig(swapless_qft=True),
    EncoderConfig("ancilla_controlled", 1, ordering="heuristic"),
    EncoderConfig("ancilla_controlled", 2, True, "reversed_heuristic"),
]


def _outputs(c, p, m, domain):
    """(simulated, expected) target values for every domain input."""
    sizes = dict(domain)
    names = list(sizes)
    inputs, expected = [], []
    for vals in itertools.product(*(range(1 << sizes[n]) for n in names)):
        values = dict(zip(names, vals))
        inputs.append(input_index(c, values))
        expected.append(int(p.evaluate(assignment(values, sizes))) % (1 << m))
    got = []
    for (out, amp), idx in zip(basis_outputs(c, inputs), inputs):
        assert abs(abs(amp) - 1) < 1e-9
        for n in names:  # domain preserved
            assert read_register(c, out, n) == read_register(c, idx, n)
        got.append(read_register(c, out, "out"))
    return got, expected


def test_u_g_angles():
    # y = 3 on 3 qubits: weights get 3/4 pi, 3/2 pi -> -1/2 pi, 3 pi -> pi
    assert u_g_angles(3, 3) == [(0, Dyadic(3, -2)), (1, Dyadic(-1, -1)), (2, Dyadic(1))]
    assert u_g_angles(8, 3) == []


def test_u_g_epsilon_prunes_small_angles():
    assert [w for w, _ in u_g_angles(1, 8, epsilon=0.05)] == [2, 3, 4, 5, 6, 7]


@pytest.mark.parametrize("cfg", CONFIGS)
def test_example_poly_all_inputs(example_poly, cfg):
    c = encode_sbp(example_poly, 3, cfg, domain={"x": 3})
    got, want = _outputs(c, example_poly, 3, {"x": 3})
    assert got == want


def test_example_poly_hand_depth(example_poly):
    order = [[VarId("x", 0)], [VarId("x", 1), VarId("x", 2)], [VarId("x", 0), VarId("x", 1)]]
    c = encode_sbp(example_poly, 3, EncoderConfig(ordering=order), domain={"x": 3})
    assert depth(c) == 13
    assert gate_counts(c) == {"CP": 6, "H": 6, "MCP": 5, "SWAP": 1}


def test_example_poly_heuristic_order(example_poly):
    order = [m.vars for m in order_monomials(example_poly, "heuristic", m=3)]
    assert order == [(VarId("x", 0),), (VarId("x", 1), VarId("x", 2)), (VarId("x", 0), VarId("x", 1))]


def test_swapless_has_no_swaps(example_poly):
    c = encode_sbp(example_poly, 3, EncoderConfig(swapless_qft=True), domain={"x": 3})
    assert "SWAP" not in gate_counts(c)
    assert c.output_permutation is None


def test_swapless_qft_permutation():
    ok, dev = assert_equiv(qft(4, swapless=True), qft(4))
    assert ok, dev


def test_errors(example_poly):
    with pytest.raises(NonIntegerPolynomialError):
        encode_sbp(SBPolynomial.parse("1/2*x[0]"), 2)
    with pytest.raises(RegisterError):
        encode_sbp(SBPolynomial.parse("out[0]"), 2)
    with pytest.raises(RegisterError):
        encode_sbp(example_poly, 3, domain={"x": 2})
    with pytest.raises(AncillaError):
        EncoderConfig("ancilla_controlled", 0)
    with pytest.raises(ValueError):
        encode_sbp(example_poly, 3, EncoderConfig(ordering=[[VarId("x", 0)]]))


def test_degree3_uses_scratch():
    p = SBPolynomial.parse("5*x[0]*x[1]*x[2] + 3*x[1]*x[2]*x[3]*y[0]")
    c = encode_sbp(p, 4, EncoderConfig("ancilla_controlled", 1))
    assert c.register("scratch").size == 2
    got, want = _outputs(c, p, 4, {"x": 4, "y": 1})
    assert got == want


def test_transpiled_encoder_equivalent(example_poly):
    for cfg in CONFIGS:
        c = encode_sbp(example_poly, 3, cfg, domain={"x": 3})
        ok, dev = assert_equiv(c, transpile(c), up_to_global_phase=False)
        assert ok, dev


def test_pool_spreads_over_ancillas():
    p = SBPolynomial.parse("x[0]*x[1] + x[2]*x[3] + x[4]*x[5] + x[6]*x[7]")
    syn = synthesize(p, 4, EncoderConfig("ancilla_controlled", 4, ordering="heuristic"))
    assert len({s.ancilla for s in syn.schedule}) == 4


_terms = st.dictionaries(
    st.frozensets(st.integers(0, 3), max_size=3).map(lambda s: tuple(VarId("x", i) for i in sorted(s))),
    st.integers(-40, 40),
    max_size=5,
)


@settings(max_examples=25)
@given(_terms, st.integers(1, 4), st.sampled_from(CONFIGS))
def test_random_polynomials(terms, m, cfg):
    p = SBPolynomial(terms)
    c = encode_sbp(p, m, cfg, domain={"x": 4})
    got, want = _outputs(c, p, m, {"x": 4})
    assert got == want


@settings(max_examples=20)
@given(_terms, st.integers(1, 3))
def test_inplace_accumulates(terms, m):
    p = SBPolynomial(terms)
    c = encode_sbp_inplace(p, m, domain={"x": 4})
    for xv in range(16):
        want_p = int(p.evaluate(assignment({"x": xv}, {"x": 4})))
        for y in range(1 << m):
            out, _ = basis_outputs(c, [input_index(c, {"x": xv, "out": y})])[0]
            assert read_register(c, out, "out") == (y + want_p) % (1 << m)


def test_additivity_of_u_g():
    # encoding p + q equals encoding p and then q in place
    p = SBPolynomial.parse("3*x[0] + x[1]")
    q = SBPolynomial.parse("2*x[0]*x[1] + 1")
    both = logical_unitary(encode_sbp_inplace(p + q, 3, domain={"x": 2}))
    from qfa.circuit import compose

    seq = logical_unitary(compose(encode_sbp_inplace(p, 3, domain={"x": 2}), encode_sbp_inplace(q, 3, domain={"x": 2})))
    k = np.unravel_index(np.argmax(np.abs(both)), both.shape)
    assert np.allclose(both * (seq[k] / both[k]), seq, atol=1e-9)
