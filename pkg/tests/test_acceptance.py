"""End-to-end acceptance checks for the headline functionality.

Each test covers one numbered requirement and prints exactly one PASS/FAIL
line (shown with ``pytest -s`` and in failure reports), enforcing the exact
values and, where stated, the wall-clock bound.
"""

import contextlib
import io
import json
import os
import random
import subprocess
import sys
from time import perf_counter

from frattini import (
    Ambient,
    Generators,
    KoszulComplex,
    betti,
    bockstein,
    cup,
    differential_matrix,
    parse,
    unp_betti,
    unp_complex,
    unp_group,
    verify_differential,
)
from frattini.cli import main as cli_main

from helpers import random_complex


@contextlib.contextmanager
def _criterion(name):
    try:
        yield
    except BaseException:
        print(f"FAIL: {name}", flush=True)
        raise
    print(f"PASS: {name}", flush=True)


def _cli_json(argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = cli_main(argv + ["--format", "json"])
    return code, json.loads(out.getvalue())


def test_criterion_01_heisenberg_betti_and_cup_products():
    with _criterion("criterion 1: Heisenberg (w=2, r=1, p=5) Betti table and cup products, < 0.1 s"):
        t0 = perf_counter()
        quad = parse("e1^e2", Ambient(2, 0, 5))
        cx = KoszulComplex(2, 5, [quad])
        table = betti(cx)
        assert table.dims == (1, 2, 2, 1)
        amb = cx.ambient
        c_e1 = table.class_from_cocycle(parse("e1", amb))
        c_e2 = table.class_from_cocycle(parse("e2", amb))
        c_e2x1 = table.class_from_cocycle(parse("e2^x1", amb))
        assert cup(c_e1, c_e2).is_zero()
        top = cup(c_e1, c_e2x1)
        assert not top.is_zero()
        assert top.degree == 3
        assert top == table.classes(3)[0]
        elapsed = perf_counter() - t0
        assert elapsed < 0.1, f"took {elapsed:.3f}s"


def test_criterion_02_u3_betti_closed_forms_and_verdict():
    with _criterion("criterion 2: U(3,7) Betti table, closed forms in degrees 1-3, verdict AGREE, < 1 s"):
        t0 = perf_counter()
        code, report = _cli_json(["unp", "-n", "3", "-p", "7"])
        assert code == 0
        assert report["betti"] == [1, 3, 8, 12, 8, 3, 1]
        n = 3
        assert report["betti"][1] == n
        assert report["betti"][2] == n * (n + 1) * (n - 1) // 3
        assert report["betti"][3] == n * (n * n - 1) * (3 * n - 4) * (n + 3) // 60
        assert report["oracle"]["closed_forms_0_to_3"] == [1, 3, 8, 12]
        assert report["verdict"] == "AGREE"
        elapsed = perf_counter() - t0
        assert elapsed < 1.0, f"took {elapsed:.3f}s"


def test_criterion_03_u4_all_degrees_against_oracle():
    with _criterion("criterion 3: U(4,11) equals the oracle in degrees 0..10 with a2=20, a3=56, < 30 s"):
        t0 = perf_counter()
        cx = unp_complex(4, 11)
        dims = list(betti(cx, with_representatives=False).dims)
        oracle = unp_betti(4)
        assert len(dims) == 11
        assert dims == oracle
        n = 4
        assert dims[2] == n * (n + 1) * (n - 1) // 3 == 20
        assert dims[3] == n * (n * n - 1) * (3 * n - 4) * (n + 3) // 60 == 56
        elapsed = perf_counter() - t0
        assert elapsed < 30.0, f"took {elapsed:.3f}s"


def test_criterion_04_series_expansion_and_recomposition():
    with _criterion("criterion 4: series expansion (1,2,5,7,12,15) and exact recomposition"):
        from frattini import PoincarePolynomial, PoincareSeries, expand, recompose, verify_expansion

        q = PoincarePolynomial((1, 2, 2, 1))
        s = PoincareSeries(q, 3)
        coeffs = expand(s, 5)
        assert coeffs == [1, 2, 5, 7, 12, 15]
        back = recompose(coeffs, 3)
        padded = list(q.coefficients) + [0] * (len(back) - len(q.coefficients))
        assert back == padded[: len(back)]
        assert verify_expansion(s, 5)


def test_criterion_05_differential_squares_to_zero():
    with _criterion("criterion 5: delta o delta = 0 on 200 randomized complexes (w<=5, r<=4, p in {3,5,7})"):
        rng = random.Random(52005)
        violations = 0
        for _ in range(200):
            cx = random_complex(rng)
            for d in range(cx.top_degree + 1):
                m1 = differential_matrix(cx, d)
                m2 = differential_matrix(cx, d + 1)
                if m1.rows and m2.rows and ((m2.entries @ m1.entries) % cx.p).any():
                    violations += 1
        assert violations == 0


def test_criterion_06_duality_euler_and_edge_dimensions():
    with _criterion("criterion 6: duality, Euler characteristic, b0=1, b1=w on 100 randomized valid complexes"):
        rng = random.Random(62006)
        done = 0
        while done < 100:
            cx = random_complex(rng, independent_only=True)
            if cx is None:
                continue
            dims = betti(cx, with_representatives=False).dims
            top = cx.top_degree
            assert all(dims[d] == dims[top - d] for d in range(top + 1))
            assert sum((-1) ** d * dims[d] for d in range(top + 1)) == 0
            assert dims[0] == 1
            assert dims[1] == cx.w
            done += 1
        assert done == 100


def test_criterion_07_prime_stability():
    with _criterion("criterion 7: U(3,p) Betti table identical at p in {7, 11, 101}"):
        tables = [tuple(betti(unp_complex(3, p), with_representatives=False).dims) for p in (7, 11, 101)]
        assert tables[0] == tables[1] == tables[2] == (1, 3, 8, 12, 8, 3, 1)


def test_criterion_08_group_verification_u2_3():
    with _criterion(
        "criterion 8: U(2,3) order 243, exhaustive associativity, 27 central order-3 elements, < 10 s"
    ):
        t0 = perf_counter()
        g = unp_group(2, 3)
        report = g.verify(mode="exhaustive")
        assert report.group_order == 243
        assert report.associativity_exhaustive
        assert report.associativity_triples == 243**3
        assert report.associativity_ok
        assert report.identity_inverse_ok
        assert report.pc_ok
        assert report.abelianization_rank == 2
        assert report.omega1_rank == 3
        assert report.exponent == 9

        elems = g.elements()
        small = [x for x in elems if g.order_of(x) <= 3]
        assert len(small) == 27
        for z in small:
            for y in elems:
                assert g.multiply(z, y) == g.multiply(y, z)
        elapsed = perf_counter() - t0
        assert elapsed < 10.0, f"took {elapsed:.3f}s"


def test_criterion_09_bockstein_formulas_and_sweep():
    with _criterion("criterion 9: Bockstein sweep (n=3, p=5, degree 6) clean; generator images verbatim"):
        gens = Generators(3, 5)
        assert str(bockstein(gens.zeta_pair(1, 2))) == "z1 x2 - z2 x1"
        assert str(bockstein(gens.x_pair(1, 2))) == "-x1 x2"
        report = verify_differential(3, 5, 6)
        assert report.beta_squared_violations == 0
        assert report.leibniz_violations == 0
        assert report.monomials_checked > 0


def test_criterion_10_byte_identical_output():
    with _criterion("criterion 10: identical job and seed give byte-identical JSON across runs"):
        for argv in (
            ["unp", "-n", "3", "-p", "7", "--format", "json", "--seed", "7"],
            ["group", "-n", "2", "-p", "5", "--group", "g", "--mode", "sampled", "--seed", "9", "--format", "json"],
        ):
            outputs = []
            for hashseed in ("1", "42"):
                env = dict(os.environ)
                env["PYTHONHASHSEED"] = hashseed
                proc = subprocess.run(
                    [sys.executable, "-m", "frattini.cli", *argv],
                    capture_output=True,
                    env=env,
                    check=False,
                )
                assert proc.returncode == 0
                outputs.append(proc.stdout)
            assert outputs[0] == outputs[1]
