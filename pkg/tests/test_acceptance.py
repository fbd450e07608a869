"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with -s to see them inline)."""

import io
import random
import sys
import time
from contextlib import contextmanager
from fractions import Fraction as Rational

import pytest

from algetutor.analytics import percentage, report_from_counts
from algetutor.domains import default_catalog, generate, solve_instance
from algetutor.engine import REGISTRY, expected_values_for_step, value_fingerprint
from algetutor.expr import canonicalize, evaluate, parse, render, to_sexpr
from algetutor.expr.evaluate import UndecidableEquivalenceError, equivalent
from algetutor.records import read_log
from algetutor.tracing import BktParams, KcState, bkt_update, replay_log

from exprgen import random_expr, shuffled_variant
from naive_engine import naive_run
from oracles import forward_mastery
from sampling_oracle import OracleSkip, oracle_equivalent

CATALOG = default_catalog()


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"FAIL  {name}", file=sys.stderr)
        raise
    print(f"PASS  {name}")


def test_table_reproduction():
    with criterion("Table reproduction: published counts -> exact 2-decimal rates"):
        started = time.perf_counter()
        cycles = [
            (76, 47, 8, 61.84, 17.02),
            (265, 71, 16, 26.79, 22.54),
            (2054, 229, 30, 11.15, 13.10),
            (1364, 188, 25, 13.78, 13.30),
        ]
        for access, interaction, finished, pct_used, pct_done in cycles:
            report = report_from_counts(access, interaction, finished_ge1=finished)
            assert report.pct_used == pct_used
            assert report.pct_finished_ge1 == pct_done
        assert percentage(520, 3510) == 14.81
        assert percentage(158, 520) == 30.38
        assert percentage(81, 158) == 51.27
        assert time.perf_counter() - started < 1.0


def test_bkt_oracle_suite():
    with criterion("BKT oracle: 1000 cases vs HMM forward computation at 1e-12"):
        rng = random.Random(60221023)
        for _ in range(1000):
            params = BktParams(
                p_init=rng.uniform(0.02, 0.98),
                p_transit=rng.uniform(0.01, 0.7),
                p_slip=rng.uniform(0.01, 0.45),
                p_guess=rng.uniform(0.01, 0.45),
            )
            observations = [rng.random() < 0.6 for _ in range(rng.randint(1, 20))]
            state = KcState("s", "exponent-product-add-exponents", params.p_init)
            for obs in observations:
                state = bkt_update(state, params, obs)
            expected = forward_mastery(
                params.p_init, params.p_transit, params.p_slip, params.p_guess, observations
            )
            assert abs(state.p_mastery - expected) <= 1e-12
        worked = bkt_update(
            KcState("s", "exponent-product-add-exponents", 0.2),
            BktParams(0.2, 0.1, 0.1, 0.2),
            correct=True,
        )
        assert abs(worked.p_mastery - 0.57647) < 5e-6


def test_solvability_fuzz_with_domain_oracles():
    with criterion("Solvability: 1000 seeds per type, domain oracles hold, <30s"):
        started = time.perf_counter()
        for pt in CATALOG.problem_types():
            for seed in range(1000):
                instance = generate(pt, seed)
                trace = solve_instance(pt, instance)
                for step in pt.steps:
                    assert expected_values_for_step(trace, step.slot)
                if pt.id == "radical-simplify":
                    _check_radical(instance, trace)
                elif pt.id == "factor-quadratic":
                    _check_factoring(instance, trace)
                elif pt.id == "rational-equation":
                    _check_rational(instance, trace)
        assert time.perf_counter() - started < 30.0


def _check_radical(instance, trace):
    n = instance.initial_facts["problem.n"]
    (square,) = expected_values_for_step(trace, "square_factor")
    (rest,) = expected_values_for_step(trace, "remaining_factor")
    assert square * rest == n
    root = int(square**0.5 + 0.5)
    assert root * root == square and root >= 2
    for k in range(2, int(rest**0.5) + 1):  # rest squarefree
        assert rest % (k * k) != 0


def _check_factoring(instance, trace):
    for form in expected_values_for_step(trace, "factored_form"):
        for x in (Rational(0), Rational(1), Rational(-3)):
            assert evaluate(form, {"x": x}) == evaluate(instance.statement, {"x": x})


def _check_rational(instance, trace):
    facts = instance.initial_facts
    a, b, c = facts["problem.a"], facts["problem.b"], facts["problem.c"]
    d, e = facts["problem.d"], facts["problem.e"]
    (solution,) = expected_values_for_step(trace, "solution")
    x_star = evaluate(solution, {})
    assert x_star != 0
    assert Rational(a) / x_star + Rational(b, c) == Rational(d, e)


def test_rete_vs_naive_equivalence():
    with criterion("Match oracle: indexed engine == naive re-scan on 4000 instances"):
        checked = 0
        for tutor in CATALOG.tutors:
            types = tutor.problem_types
            for i in range(1000):
                pt = types[i % len(types)]
                instance = generate(pt, i)
                trace = solve_instance(pt, instance)
                indexed = sorted({(e.slot, value_fingerprint(e.value)) for e in trace})
                rescan = naive_run(list(pt.rules), REGISTRY, instance.initial_facts)
                assert indexed == rescan, (pt.id, i)
                checked += 1
        assert checked == 4000


def test_expression_property_suite():
    with criterion("Expressions: 10000 round-trips, idempotence, oracle agreement"):
        rng = random.Random(424242)
        for _ in range(10_000):
            e = random_expr(rng)
            c1 = canonicalize(e)
            assert to_sexpr(canonicalize(c1)) == to_sexpr(c1)
            back = parse(render(e, "plain"))
            assert canonicalize(back) == c1
        disagreements = 0
        compared = 0
        pair_rng = random.Random(515151)
        while compared < 1000:
            e = random_expr(pair_rng, depth=3)
            if pair_rng.random() < 0.5:
                other = shuffled_variant(pair_rng, e)
            else:
                from algetutor.expr import Const, Product

                other = Product((Const(2), e))
            try:
                ours = equivalent(e, other)
                oracle = oracle_equivalent(e, other, seed=compared)
            except (UndecidableEquivalenceError, OracleSkip):
                continue
            compared += 1
            if ours != oracle:
                disagreements += 1
        assert disagreements == 0


def test_end_to_end_replay():
    with criterion("Replay: simulate(100,20,7) twice -> byte-identical stores"):
        from click.testing import CliRunner

        from algetutor.cli import cli

        runner = CliRunner()
        outputs = []
        for _ in range(2):
            result = runner.invoke(
                cli, ["simulate", "--students", "100", "--problems", "20", "--seed", "7"]
            )
            assert result.exit_code == 0
            outputs.append(result.output)
        stores = []
        for text in outputs:
            records = list(read_log(io.StringIO(text)))
            import json

            stores.append(
                json.dumps(replay_log(records).to_json_dict(), sort_keys=True).encode()
            )
        assert stores[0] == stores[1]

        records = list(read_log(io.StringIO(outputs[0])))
        from datetime import date

        from algetutor.analytics import TermWindow, funnel, retention_summary

        window = TermWindow(0, "sim", date(2022, 1, 1), date(2022, 12, 31), roster=150)
        report = funnel(records, window)
        summary = retention_summary(records)
        five_plus = summary["finished_ge5"]["count"]
        assert (
            report.students_with_access
            >= report.students_with_interaction
            >= report.finished_ge1
            >= five_plus
        )

        params = BktParams()
        state = KcState("s", "exponent-product-add-exponents", params.p_init)
        crossed_at = None
        for i in range(1, 26):
            state = bkt_update(state, params, correct=True)
            if state.p_mastery >= 0.95:
                crossed_at = i
                break
        assert crossed_at is not None and crossed_at <= 25


def test_service_contract():
    with criterion("Service: consent 403, lock 409, hint cap 3, done rule over HTTP"):
        from fastapi.testclient import TestClient

        from algetutor.config import AppConfig
        from algetutor.platform import TutorPlatform
        from algetutor.service import create_app

        import tempfile

        with tempfile.TemporaryDirectory() as tmp:
            from pathlib import Path

            config = AppConfig(storage_dir=Path(tmp), admin_token="acceptance")
            platform = TutorPlatform(config)
            client = TestClient(create_app(config, platform))

            denied = client.post(
                "/api/sessions", json={"student_id": "nc", "consent": False}
            ).json()
            headers_denied = {"Authorization": f"Bearer {denied['token']}"}
            assert client.get("/api/tutors", headers=headers_denied).status_code == 403

            granted = client.post(
                "/api/sessions", json={"student_id": "ok", "consent": True}
            ).json()
            headers = {"Authorization": f"Bearer {granted['token']}"}
            problem = client.post(
                "/api/tutors/exponents/problems",
                json={"mode": "manual", "problem_type": "exponent-product"},
                headers=headers,
            ).json()
            pid = problem["problem_id"]

            tiers = [
                client.post(
                    f"/api/problems/{pid}/steps/exponent_sum/hints", headers=headers
                ).json()["tier"]
                for _ in range(4)
            ]
            assert tiers == [1, 2, 3, 3]

            bottom = client.post(
                f"/api/problems/{pid}/steps/exponent_sum/hints", headers=headers
            ).json()["bottom_out_value"]
            first = client.post(
                f"/api/problems/{pid}/steps/exponent_sum/attempts",
                json={"input": bottom},
                headers=headers,
            )
            assert first.status_code == 200 and first.json()["correct"]
            locked = client.post(
                f"/api/problems/{pid}/steps/exponent_sum/attempts",
                json={"input": bottom},
                headers=headers,
            )
            assert locked.status_code == 409

            # done with the second step still unanswered
            incomplete = client.post(f"/api/problems/{pid}/done", headers=headers)
            assert incomplete.json() == {"complete": False}

            for _ in range(3):
                hint = client.post(
                    f"/api/problems/{pid}/steps/result/hints", headers=headers
                ).json()
            client.post(
                f"/api/problems/{pid}/steps/result/attempts",
                json={"input": hint["bottom_out_value"]},
                headers=headers,
            )
            complete = client.post(f"/api/problems/{pid}/done", headers=headers)
            assert complete.json() == {"complete": True}
