"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import dataclasses
import json
import math
import time

import numpy as np

from collet import EllipseState, preset, radius_at, solve_contact
from collet.cli import main
from collet.designspace import PRESET_NAMES, sweep
from collet.geometry import contact_angle, solve_next_contact_angle
from collet.mechanics import energy_tip_deflection
from collet.oracle import (build_mesh, frame_mesh, quarter_circle, solve_static,
                           straight_cantilever, validate_step)
from collet.solver import StopReason, march


def test_criterion_01_thickness_and_modulus_independence(acceptance):
    start = time.perf_counter()
    base = preset("S3")
    ref = np.array(march(base).tips)
    worst, same_length = 0.0, True
    for t in (1.0, 2.0, 4.0):
        for E in (1700.0, 2200.0):
            tips = np.array(march(dataclasses.replace(base, t=t, E=E)).tips)
            if tips.shape != ref.shape:
                same_length = False
                continue
            worst = max(worst, float(np.max(np.abs(tips[1:] - ref[1:]) / ref[1:])))
    elapsed = time.perf_counter() - start
    ok = same_length and worst <= 1e-9 and elapsed < 5
    acceptance(1, ok, f"max relative tip difference {worst:.2e} (<= 1e-9), {elapsed:.2f} s (< 5 s)")


def test_criterion_02_oracle_agreement(acceptance):
    start = time.perf_counter()
    worst_all, worst_first = 0.0, 0.0
    for name in PRESET_NAMES:
        g = preset(name)
        curve = march(g)
        for k, sol in enumerate(curve.steps):
            if curve.rows[k + 1].delta_tip > 1.5 + 1e-12:
                break
            check = validate_step(g, EllipseState(g.a, curve.rows[k].b, k), sol, 400)
            worst_all = max(worst_all, check.tip_err)
            if k == 0:
                worst_first = max(worst_first, check.tip_err)
    elapsed = time.perf_counter() - start
    ok = worst_all < 0.10 and worst_first < 0.05 and elapsed < 60
    acceptance(2, ok, f"max tip error {worst_all:.4f} (< 0.10), first step {worst_first:.4f} "
                      f"(< 0.05), {elapsed:.1f} s (< 60 s)")


def test_criterion_03_adaptor_diameter_sensitivity(acceptance):
    start = time.perf_counter()
    grid = sweep(preset("S3"), "adaptor_diameter", [30.0, 40.0])
    tips = grid.resampled()
    upper = grid.common_delta_grid >= grid.common_delta_grid[-1] / 2
    ratio = tips[0, upper] / tips[1, upper]
    elapsed = time.perf_counter() - start
    ok = bool(np.all((ratio >= 1.6) & (ratio <= 2.4))) and elapsed < 10
    acceptance(3, ok, f"delta(d=30)/delta(d=40) in [{ratio.min():.3f}, {ratio.max():.3f}] "
                      f"(required within [1.6, 2.4]), {elapsed:.2f} s (< 10 s)")


def test_criterion_04_chuck_width_ordering(acceptance):
    start = time.perf_counter()
    grid = sweep(preset("S3"), "chuck_size", [3.0, 4.0, 6.0])
    t3, t4, t6 = grid.resampled()
    ordered = bool(np.all(t6 >= t4) and np.all(t4 >= t3))
    strict = bool(t6[-1] > t4[-1] > t3[-1])
    elapsed = time.perf_counter() - start
    ok = ordered and strict and elapsed < 10
    acceptance(4, ok, f"final sample delta(c=3, 4, 6) = {t3[-1]:.4f}, {t4[-1]:.4f}, "
                      f"{t6[-1]:.4f} mm (required non-decreasing in c, strict at the end), "
                      f"{elapsed:.2f} s (< 10 s)")


def test_criterion_05_step_convergence(acceptance):
    start = time.perf_counter()
    worst_delta, worst_tip, stops_ok = 0.0, 0.0, True
    for name in PRESET_NAMES:
        coarse, fine = march(preset(name), n_steps=60), march(preset(name), n_steps=600)
        stops_ok &= coarse.stop_reason is fine.stop_reason is StopReason.CLEARANCE_REACHED
        worst_delta = max(worst_delta, abs(fine.final_delta / coarse.final_delta - 1))
        worst_tip = max(worst_tip, abs(fine.rows[-1].delta_tip / coarse.rows[-1].delta_tip - 1))
    elapsed = time.perf_counter() - start
    ok = stops_ok and worst_delta < 0.01 and worst_tip < 0.01 and elapsed < 30
    acceptance(5, ok, f"stop travel change {worst_delta:.2e}, final tip change {worst_tip:.2e} "
                      f"(< 1e-2), {elapsed:.2f} s (< 30 s)")


def test_criterion_06_march_invariants(acceptance):
    on_ellipse, height, b_ok, tip_ok = 0.0, 0.0, True, True
    for name in PRESET_NAMES:
        g = preset(name)
        curve = march(g)
        for k, sol in enumerate(curve.steps):
            b = curve.rows[k].b
            r = radius_at(g.a, b, sol.beta)
            x, y = r * math.cos(sol.beta), r * math.sin(sol.beta)
            on_ellipse = max(on_ellipse, abs((x / g.a) ** 2 + (y / b) ** 2 - 1))
            height = max(height, abs(y - g.d / 2))
        b_ok &= bool(np.all(np.diff([row.b for row in curve.rows]) <= 0))
        tip_ok &= bool(np.all(np.diff(curve.tips) >= 0))
    ok = on_ellipse <= 1e-9 and height <= 1e-9 and b_ok and tip_ok
    acceptance(6, ok, f"ellipse residual {on_ellipse:.1e}, height error {height:.1e} mm "
                      f"(<= 1e-9), b non-increasing {b_ok}, tip non-decreasing {tip_ok}")


def test_criterion_07_oracle_benchmarks(acceptance):
    E, I, L, R, F = 1700.0, 50.0, 40.0, 25.0, 1.0
    mesh = frame_mesh(straight_cantilever(L, 100), I, E)
    tip = -solve_static(mesh, {mesh.tip_node: (0.0, -F)}).tip_v
    straight = abs(tip / (F * L ** 3 / (3 * E * I)) - 1)

    mesh = frame_mesh(quarter_circle(R, 200), I, E)
    tip = -solve_static(mesh, {mesh.tip_node: (0.0, -F)}).tip_v
    curved = abs(tip / (math.pi * F * R ** 3 / (4 * E * I)) - 1)

    g = preset("S3")
    mesh = build_mesh(g, g.initial_state(), 400)
    c, t = mesh.contact_node, mesh.tip_node
    d_ct = solve_static(mesh, {c: (0.0, 1.0)}).displacements[t, 1]
    d_tc = solve_static(mesh, {t: (0.0, 1.0)}).displacements[c, 1]
    betti = abs(d_ct / d_tc - 1)
    ok = straight <= 5e-3 and curved <= 1e-2 and betti <= 1e-6
    acceptance(7, ok, f"straight {straight:.1e} (<= 5e-3), quarter circle {curved:.1e} "
                      f"(<= 1e-2), Maxwell-Betti {betti:.1e} (<= 1e-6)")


def test_criterion_08_castigliano_self_check(acceptance):
    worst = 0.0
    for name in PRESET_NAMES:
        g = preset(name)
        state = g.initial_state()
        sol = solve_contact(g, state, 3.0 / 60)
        fd = energy_tip_deflection(g, state, sol)
        worst = max(worst, abs(fd / sol.delta_tip_step - 1))
    acceptance(8, worst <= 1e-6, f"max relative difference {worst:.1e} (<= 1e-6)")


def test_criterion_09_grip_range(acceptance, tmp_path, capsys):
    config = tmp_path / "collet.json"
    config.write_text(json.dumps({
        "geometry": {"preset": "S3", "c": 5 * math.pi / 4, "rest_opening": 53.0},
        "run": {"delta_total": 3.0, "clearance": 3.0},
    }))
    out = tmp_path / "report.json"
    code = main(["grip-range", "--config", str(config), "--out", str(out)])
    capsys.readouterr()
    report = json.loads(out.read_text()) if out.exists() else {}
    window = [report.get("min"), report.get("max")]
    ok = (code == 0 and window == [48.0, 53.0] and report.get("max_tip_mm") == 2.5
          and report.get("stop_reason") == "interference")
    acceptance(9, ok, f"exit {code}, window {window} mm (expected [48, 53]), "
                      f"tip {report.get('max_tip_mm')} mm, stop {report.get('stop_reason')}")


def test_criterion_10_circle_degeneracies(acceptance):
    rng = np.random.default_rng(20241018)
    worst_beta, worst_phi, cases = 0.0, 0.0, 0
    while cases < 1000:
        a = rng.uniform(5.0, 60.0)
        d = rng.uniform(0.02, 1.98) * a
        beta = contact_angle(a, a, d)
        worst_beta = max(worst_beta, abs(beta - math.asin(d / (2 * a))))
        room = (math.pi / 2 - beta) * a
        if room <= 1e-6:
            continue
        step = rng.uniform(0.0, 0.999) * room
        phi = solve_next_contact_angle(a, a, beta, step)
        worst_phi = max(worst_phi, abs(phi - (beta + step / a)))
        cases += 1
    ok = worst_beta <= 1e-10 and worst_phi <= 1e-9
    acceptance(10, ok, f"{cases} cases, contact angle error {worst_beta:.1e} (<= 1e-10), "
                       f"next angle error {worst_phi:.1e} (<= 1e-9)")
