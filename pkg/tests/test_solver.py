"""Tests for the Frank-Wolfe loop, step rules, and trajectory recording."""

import math

import numpy as np
import pytest

from fwlab import (
    DegenerateDirectionError,
    HEBPower,
    InfeasibleStartError,
    Precision,
    ProblemSpec,
    Quadratic,
    SolverConfig,
    UnsupportedObjectiveError,
    exact_linesearch_gamma,
    golden_section_gamma,
    iterations_to_target,
    lmo,
    lp_norm,
    run,
    short_step_gamma,
    slow_start,
    write_trajectory_csv,
)
from fwlab.solver import _count2d_double


def quad_grad(x):
    return tuple(2.0 * (c - (1.0 if i == 0 else 0.0)) for i, c in enumerate(x))


def random_feasible(n, p, seed, d=2):
    rng = np.random.default_rng(seed)
    pts = []
    while len(pts) < n:
        x = rng.uniform(-1.0, 1.0, size=d)
        if lp_norm(tuple(x), p) < 1.0:
            pts.append(tuple(float(c) for c in x))
    return pts


class TestExactLineSearch:
    def test_orthogonal_direction_gives_zero(self):
        # grad f(x) = (-2, 1) at x = (0, 0.5); x - v = (0.1, 0.2) is orthogonal
        x = (0.0, 0.5)
        v = (-0.1, 0.3)
        assert exact_linesearch_gamma(Quadratic(), x, v) == 0.0

    def test_optimum_at_segment_end(self):
        assert exact_linesearch_gamma(Quadratic(), (0.0, 0.0), (1.0, 0.0)) == 1.0

    def test_model_step_closed_form(self):
        # u = 0.1, w = 0.02, p = 3: gamma = (M - u + u^2 + w^2) / (d1^2 + d2^2),
        # frozen from the 50-digit oracle
        x = (0.9, 0.02)
        ball = ProblemSpec(p=3.0).ball()
        v = lmo(quad_grad(x), ball)
        gamma = exact_linesearch_gamma(Quadratic(), x, v)
        assert gamma == pytest.approx(0.07683597488644038, rel=1e-13)

    def test_against_golden_section(self):
        # the golden-section oracle runs in extended precision: in doubles
        # the 1-D quadratic is flat to rounding within ~sqrt(eps) of the
        # minimizer, which would cap the achievable agreement near 1e-9
        ball = ProblemSpec(p=3.0).ball()
        ext = Precision.extended(192)
        for x in random_feasible(20, 3.0, seed=11):
            if x == (1.0, 0.0):
                continue
            v = lmo(quad_grad(x), ball)
            closed = exact_linesearch_gamma(Quadratic(), x, v)
            golden = golden_section_gamma(Quadratic(), x, v, tol=1e-12, precision=ext)
            assert closed == pytest.approx(golden, abs=1e-10)

    def test_heb_shares_the_quadratic_gamma(self):
        ball = ProblemSpec(p=3.0).ball()
        obj = HEBPower(mu=2.0, theta=0.25)
        for x in random_feasible(20, 3.0, seed=12):
            v = lmo(quad_grad(x), ball)
            assert exact_linesearch_gamma(obj, x, v) == exact_linesearch_gamma(Quadratic(), x, v)

    def test_degenerate_direction(self):
        with pytest.raises(DegenerateDirectionError):
            exact_linesearch_gamma(Quadratic(), (0.5, 0.0), (0.5, 0.0))


class TestShortStep:
    def test_coincides_with_exact_line_search(self):
        # on the isotropic quadratic with L = 2 the two rules are identical
        ball = ProblemSpec(p=3.0).ball()
        for x in random_feasible(50, 3.0, seed=13):
            v = lmo(quad_grad(x), ball)
            exact = exact_linesearch_gamma(Quadratic(), x, v)
            short = short_step_gamma(Quadratic(), x, v, L=2.0)
            assert abs(exact - short) <= 1e-15

    def test_origin_step(self):
        assert short_step_gamma(Quadratic(), (0.0, 0.0), (1.0, 0.0), L=2.0) == 1.0

    def test_axis_start_jumps_to_vertex(self):
        # from (1-u) e1 the oracle vertex is e1 itself and the short step
        # saturates at exactly 1 (the optimum sits at the segment end)
        x = (0.5, 0.0)
        ball = ProblemSpec(p=3.0).ball()
        v = lmo(quad_grad(x), ball)
        assert v == (1.0, 0.0)
        gamma = short_step_gamma(Quadratic(), x, v, L=2.0)
        assert gamma == 1.0
        assert gamma == exact_linesearch_gamma(Quadratic(), x, v)

    def test_rejects_heb(self):
        with pytest.raises(UnsupportedObjectiveError):
            short_step_gamma(HEBPower(mu=1.0, theta=0.25), (0.5, 0.1), (0.9, 0.0))


class TestRun:
    def test_start_at_optimum(self):
        recs = run(ProblemSpec(p=3.0), Quadratic(), (1.0, 0.0), SolverConfig(max_iters=100))
        assert len(recs) == 1
        assert recs[0].t == 0
        assert recs[0].h == 0.0

    def test_infeasible_start(self):
        with pytest.raises(InfeasibleStartError):
            run(ProblemSpec(p=3.0), Quadratic(), (1.01, 0.0), SolverConfig())

    def test_short_rule_rejects_heb(self):
        with pytest.raises(UnsupportedObjectiveError):
            run(ProblemSpec(p=3.0), HEBPower(mu=1.0, theta=0.25), (0.5, 0.1),
                SolverConfig(rule="short"))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            run(ProblemSpec(p=3.0, d=3), Quadratic(), (0.5, 0.1), SolverConfig())

    def test_monotone_descent_and_feasibility(self):
        for x0 in random_feasible(5, 3.0, seed=14):
            recs = run(ProblemSpec(p=3.0), Quadratic(), x0, SolverConfig(max_iters=300))
            hs = [r.h for r in recs]
            assert all(b <= a * (1 + 1e-12) for a, b in zip(hs, hs[1:]))
            for r in recs:
                assert lp_norm(r.x, 3.0) <= 1.0 + 1e-12

    def test_confined_to_plane_in_higher_dimension(self):
        x0 = tuple(list(slow_start(0.5, 3.0)) + [0.0, 0.0, 0.0])
        recs = run(ProblemSpec(p=3.0, d=5), Quadratic(), x0, SolverConfig(max_iters=200))
        for r in recs:
            assert r.x[2] == 0.0 and r.x[3] == 0.0 and r.x[4] == 0.0

    def test_asymptotic_constant_at_ten_thousand(self):
        # u0 = 3/4 slow start, p = 3: h_T T^(3/2) lands within 5% of 0.40825
        x0 = slow_start(0.75, 3.0)
        recs = run(ProblemSpec(p=3.0), Quadratic(), x0,
                   SolverConfig(max_iters=10**4, record_every=10**4))
        final = recs[-1]
        assert final.t == 10**4
        assert final.h * final.t ** 1.5 == pytest.approx(0.40825, rel=0.05)

    def test_gap_tolerance_stops_early(self):
        x0 = slow_start(0.5, 3.0)
        recs = run(ProblemSpec(p=3.0), Quadratic(), x0,
                   SolverConfig(max_iters=10**6, gap_tol=1e-4))
        assert recs[-1].h <= 1e-4
        assert recs[-1].t < 10**6
        assert math.isnan(recs[-1].gamma)

    def test_record_every_keeps_terminal_row(self):
        x0 = slow_start(0.5, 3.0)
        recs = run(ProblemSpec(p=3.0), Quadratic(), x0,
                   SolverConfig(max_iters=1001, record_every=100))
        ts = [r.t for r in recs]
        assert ts == [*range(0, 1001, 100), 1001]

    def test_record_fields_consistency(self):
        from fwlab import primal_gap

        x0 = slow_start(0.5, 3.0)
        recs = run(ProblemSpec(p=3.0), Quadratic(), x0, SolverConfig(max_iters=50))
        alpha = 2.0 / 3.0
        assert math.isnan(recs[0].s)
        for prev, cur in zip(recs, recs[1:]):
            assert cur.h == primal_gap(Quadratic(), cur.x)
            assert cur.u == 1.0 - cur.x[0]
            assert cur.w == cur.x[1]
            assert cur.y == pytest.approx(abs(cur.w) / cur.u ** (1 + alpha), rel=1e-14)
            # s_t = r_{t+1} / r_t lands on the following row; r = sqrt(h) here
            assert cur.s == pytest.approx(math.sqrt(cur.h / prev.h), rel=1e-12)
            assert 0.0 <= prev.gamma <= 1.0


class TestStructuralIdentities:
    def setup_method(self):
        self.problem = ProblemSpec(p=3.0)
        self.ball = self.problem.ball()
        x0 = slow_start(0.5, 3.0)
        self.recs = run(self.problem, Quadratic(), x0, SolverConfig(max_iters=500))

    def test_decrease_identity(self):
        # h_t - h_{t+1} = <grad f, x - v>^2 / (4 ||v - x||^2) when gamma < 1
        for cur, nxt in zip(self.recs, self.recs[1:]):
            if not (0.0 < cur.gamma < 1.0):
                continue
            g = quad_grad(cur.x)
            v = lmo(g, self.ball)
            num = sum(a * (b - c) for a, b, c in zip(g, cur.x, v))
            den = 4.0 * sum((b - c) ** 2 for b, c in zip(cur.x, v))
            predicted = num * num / den
            assert cur.h - nxt.h == pytest.approx(predicted, rel=1e-10)

    def test_ratio_identity(self):
        # u' = |d2| P / (d1^2 + d2^2), |w'| = |d1| P / (d1^2 + d2^2),
        # P = |w|(1 - v1) + u |v2|, checked against the generic update
        for cur, nxt in zip(self.recs, self.recs[1:]):
            if cur.w == 0.0 or not (0.0 < cur.gamma < 1.0):
                continue
            g = quad_grad(cur.x)
            v = lmo(g, self.ball)
            u, w = cur.u, cur.w
            d1 = v[0] - 1.0 + u
            d2 = v[1] - w
            P = abs(w) * (1.0 - v[0]) + u * abs(v[1])
            den = d1 * d1 + d2 * d2
            assert nxt.u == pytest.approx(abs(d2) * P / den, rel=1e-10)
            assert abs(nxt.w) == pytest.approx(abs(d1) * P / den, rel=1e-10)
            # the transverse coordinate alternates sign while d1 > 0
            assert d1 > 0.0
            assert math.copysign(1.0, nxt.w) == -math.copysign(1.0, cur.w)


class TestCoincidence:
    def test_quadratic_and_heb_runs_are_bit_identical(self):
        problem = ProblemSpec(p=3.0)
        x0 = slow_start(0.5, 3.0)
        cfg = SolverConfig(max_iters=500)
        quad = run(problem, Quadratic(), x0, cfg)
        for mu, theta in ((1.0, 1.0 / 3.0), (2.0, 0.25), (1.0, 0.5)):
            heb = run(problem, HEBPower(mu=mu, theta=theta), x0, cfg)
            assert len(heb) == len(quad)
            for a, b in zip(quad, heb):
                assert a.x == b.x

    def test_golden_section_stays_close(self):
        problem = ProblemSpec(p=3.0)
        x0 = slow_start(0.5, 3.0)
        T = 1000
        closed = run(problem, HEBPower(mu=1.0, theta=1.0 / 3.0), x0,
                     SolverConfig(max_iters=T))
        golden = run(problem, HEBPower(mu=1.0, theta=1.0 / 3.0), x0,
                     SolverConfig(max_iters=T, golden_section=True))
        dev = max(max(abs(a - b) for a, b in zip(r1.x, r2.x))
                  for r1, r2 in zip(closed, golden))
        assert dev < 1e-8


class TestIterationCount:
    def test_zero_iterations_at_optimum(self):
        assert iterations_to_target(ProblemSpec(p=3.0), Quadratic(), (1.0, 0.0),
                                    1e-4, 100) == 0

    def test_axis_start_converges_in_one_step(self):
        n = iterations_to_target(ProblemSpec(p=3.0), Quadratic(), (1.0 - 1e-2, 0.0),
                                 1e-12, 100)
        assert n == 1

    def test_cap_returns_none(self):
        x0 = slow_start(0.5, 3.0)
        assert iterations_to_target(ProblemSpec(p=3.0), Quadratic(), x0, 1e-4, 10) is None

    def test_fast_path_matches_generic_loop(self):
        problem = ProblemSpec(p=3.0)
        for x0 in random_feasible(100, 3.0, seed=15):
            fast = _count2d_double(3.0, 1.5, x0[0], x0[1], 1e-3, 10**5)
            recs = run(problem, Quadratic(), x0,
                       SolverConfig(max_iters=10**5, gap_tol=1e-3, record_every=10**5))
            generic = recs[-1].t if recs[-1].h <= 1e-3 else None
            assert fast == generic

    def test_validation(self):
        with pytest.raises(ValueError):
            iterations_to_target(ProblemSpec(p=3.0), Quadratic(), (0.0, 0.0), 0.0, 10)
        with pytest.raises(ValueError):
            iterations_to_target(ProblemSpec(p=3.0), Quadratic(), (0.0, 0.0), 1e-4, 0)


class TestCsvExport:
    def test_header_and_determinism(self, tmp_path):
        x0 = slow_start(0.75, 3.0)
        recs = run(ProblemSpec(p=3.0), Quadratic(), x0, SolverConfig(max_iters=25))
        p1 = tmp_path / "a.csv"
        p2 = tmp_path / "b.csv"
        write_trajectory_csv(recs, p1)
        write_trajectory_csv(recs, p2)
        b1 = p1.read_bytes()
        assert b1 == p2.read_bytes()
        lines = b1.decode().splitlines()
        assert lines[0] == "t,x1,x2,gamma,h,u,w,y,s"
        assert len(lines) == len(recs) + 1
        first = lines[1].split(",")
        assert first[0] == "0"
        assert float(first[1]) == 0.25
        # full precision round trip
        assert float(first[4]) == recs[0].h

    def test_nan_cells(self, tmp_path):
        recs = run(ProblemSpec(p=3.0), Quadratic(), (1.0, 0.0), SolverConfig(max_iters=5))
        path = tmp_path / "opt.csv"
        write_trajectory_csv(recs, path)
        row = path.read_text().splitlines()[1].split(",")
        assert row[3] == "nan"  # no step taken from the terminal row
        assert row[8] == "nan"  # no previous row for the contraction ratio


class TestExtendedPrecision:
    def test_extended_run_matches_double_closely(self):
        ext = Precision.extended(192)
        x0d = slow_start(0.5, 3.0)
        x0e = slow_start(0.5, 3.0, precision=ext)
        cfg_d = SolverConfig(max_iters=150)
        cfg_e = SolverConfig(max_iters=150, precision=ext)
        rd = run(ProblemSpec(p=3.0), Quadratic(), x0d, cfg_d)
        re_ = run(ProblemSpec(p=3.0), Quadratic(), x0e, cfg_e)
        dev = max(abs(float(a.x[0]) - float(b.x[0])) + abs(float(a.x[1]) - float(b.x[1]))
                  for a, b in zip(rd, re_))
        assert dev < 1e-13
