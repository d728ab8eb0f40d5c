"""Command-line entry point: ``horotile {verify,build,conjugate,render,density}``.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from . import kernels
from .algebra import MAX_PRECISION, DyadicRes, dyadic_div, pi_m
from .cf import check_cf_properties, hecke_entry_scan, random_reduced_sequence
from .geom import HPoint

SUITES = ("tri", "pent", "det", "identities", "index6", "free", "kernel", "hecke", "cf",
          "ford", "conjugacy", "dyadic")
FIGURES = ("ford", "hecke", "binary", "hexagonal", "tile", "threeprong")
ORACLES = ("hexagonal", "gap", "full", "empty", "triangle", "binary", "packing")


class ConfigError(ValueError):
    pass


def _report(check: str, parameters: dict, expected, actual, ok: bool, **extra) -> dict:
    r = {"check": check, "parameters": parameters, "expected": expected, "actual": actual, "pass": bool(ok)}
    r.update(extra)
    return r


# -- verify suites ------------------------------------------------------------------


def suite_tri(a) -> list[dict]:
    from .treeaction import orbit_tri_size

    n = a.precision or 4
    t = time.perf_counter()
    size = orbit_tri_size(n, a.w)
    return [_report("tri-transitivity", {"N": n, "w": a.w}, 4 ** n, size, size == 4 ** n,
                    seconds=time.perf_counter() - t, backend=kernels.BACKEND)]


def suite_pent(a) -> list[dict]:
    from .treeaction import orbit_pent_size

    n = a.precision or 2
    if n > 4:
        raise ConfigError("pentagonal orbit needs 2^(4N) bytes; use --precision <= 4")
    t = time.perf_counter()
    size = orbit_pent_size(n, a.w, a.k)
    return [_report("pent-transitivity", {"N": n, "w": a.w, "k": a.k}, 16 ** n, size, size == 16 ** n,
                    seconds=time.perf_counter() - t, backend=kernels.BACKEND)]


def suite_det(a) -> list[dict]:
    from .treeaction import pent_lattice_det

    out = []
    for k in range(-10, 11):
        want = 5 * ((k - 2) * (k - 1) * k * (k + 1) + 1)
        got = pent_lattice_det(k)
        out.append(_report("determinant", {"k": k}, want, got, got == want and got % 2 == 1))
    return out


def suite_identities(a) -> list[dict]:
    from .treeaction import check_identities

    r = check_identities(4, a.samples or 1000, 16, a.seed)
    return [_report("composite-identities", {"exhaustive_N": 4, "random": a.samples or 1000, "random_N": 16},
                    "no failures", r["identities"], r["pass"])]


def suite_index6(a) -> list[dict]:
    from .treeaction import coset_index_E

    r = coset_index_E(a.word_len or 10)
    return [_report("index6", {"max_len": a.word_len or 10}, 6, r["index"],
                    r["index"] == 6 and r["stabilized"] and not r["anomalies"],
                    counts_by_length=r["counts_by_length"], elements=r["elements"])]


def suite_free(a) -> list[dict]:
    from .treeaction import free_check

    r = free_check(a.word_len or 12)
    return [_report("free", {"max_len": r["max_len"]}, 0, r["identity_words"], r["pass"],
                    words_checked=r["words_checked"], backend=r["backend"])]


def suite_kernel(a) -> list[dict]:
    from .treeaction import kernel_action_check

    n = a.precision or 8
    r = kernel_action_check(a.word_len or 12, n)
    return [_report("kernel-action", {"max_len": r["max_len"], "N": n}, 0,
                    r["zero_sum_words_moving_some_pair"], r["pass"], zero_sum_words=r["zero_sum_words"])]


def suite_hecke(a) -> list[dict]:
    from .tiling import cusp_field, enumerate_hecke

    r = hecke_entry_scan(a.word_len or 12)
    out = [_report("hecke-entries", {"max_word_len": r["max_word_len"]}, [-1, 0, 1],
                   r["rational_entries_found"], r["pass"], elements_seen=r["elements_seen"])]
    p = enumerate_hecke(8)
    out.append(_report("hecke-disjoint", {"max_word_len": 8}, 0, len(p.overlaps), not p.overlaps,
                       horoballs=len(p.horoballs)))
    out.append(_report("hecke-field", {"max_word_len": 8}, "golden", cusp_field(p), cusp_field(p) == "golden"))
    return out


def suite_cf(a) -> list[dict]:
    rng = random.Random(a.seed)
    n = a.samples or 10_000
    bad = None
    for _ in range(n):
        seq = random_reduced_sequence(rng, 20)
        r = check_cf_properties(seq)
        if not r["pass"]:
            bad = {"r": list(seq.r), "eps": list(seq.eps), **r["violation"]}
            break
    return [_report("cf-properties", {"sequences": n, "length": 20, "seed": a.seed}, None, bad, bad is None)]


def ford_checks(q_max: int) -> list[dict]:
    from .tiling import enumerate_ford, horoball_relation

    p = enumerate_ford(q_max)
    finite = [h for h in p.horoballs if not h.at_inf]
    diam_ok = all(h.size == Fraction(1, h.tangent.denominator ** 2) for h in finite)
    overlaps = mismatches = 0
    for i, h in enumerate(p.horoballs):
        for g in p.horoballs[i + 1:]:
            rel = horoball_relation(h, g)
            overlaps += rel == "overlap"
            if h.at_inf or g.at_inf:
                f = g if h.at_inf else h
                ford = f.tangent.denominator == 1
            else:
                x, y = h.tangent, g.tangent
                ford = abs(x.numerator * y.denominator - x.denominator * y.numerator) == 1
            mismatches += (rel == "tangent") != ford
    return [
        _report("ford-diameters", {"q_max": q_max}, "1/q^2", "1/q^2" if diam_ok else "mismatch", diam_ok,
                horoballs=len(p.horoballs)),
        _report("ford-disjoint", {"q_max": q_max}, 0, overlaps, overlaps == 0),
        _report("ford-tangency", {"q_max": q_max}, 0, mismatches, mismatches == 0),
    ]


def suite_ford(a) -> list[dict]:
    return ford_checks(a.qmax or 50)


def conjugacy_checks(seed: int, words: int = 100, precision: int = 12) -> list[dict]:
    from .tiling import assign_indices, conjugate_shift, enumerate_ford, enumerate_hecke, validate
    from .treeaction import LabelPair, LabelQuad, act_word_pent, act_word_tri, random_word

    rng = random.Random(seed)
    mod = 1 << precision
    out = []
    bad = 0
    for _ in range(words):
        w = random_word(rng, rng.randint(1, 12), ("C", "L"))
        s = LabelPair.of(rng.randrange(mod), rng.randrange(mod), rng.randrange(mod), precision)
        e = DyadicRes(rng.randrange(mod), precision)
        shifted = LabelPair(s.a + e, s.b + e, s.w + 3 * e)
        x, y = act_word_tri(w, shifted), act_word_tri(w, s)
        bad += (x.a, x.b, x.w) != (y.a + e, y.b + e, y.w + 3 * e)
    out.append(_report("tri-equivariance", {"words": words, "N": precision, "seed": seed}, 0, bad, bad == 0))
    bad = 0
    for _ in range(words):
        w = random_word(rng, rng.randint(1, 12), ("P", "L"))
        k = rng.randrange(-4, 5)
        s = LabelQuad.of(*(rng.randrange(mod) for _ in range(5)), k, precision)
        e = DyadicRes(rng.randrange(mod), precision)
        shifted = LabelQuad(s.a + e, s.b + e, s.c + e, s.d + e, s.w + 5 * e, k)
        x, y = act_word_pent(w, shifted), act_word_pent(w, s)
        bad += x.quintuple() != tuple(v + e for v in y.quintuple())
    out.append(_report("pent-equivariance", {"words": words, "N": precision, "seed": seed}, 0, bad, bad == 0))
    z = DyadicRes(0, precision)
    t = assign_indices(enumerate_ford(10), z, (z, z))
    u = conjugate_shift(t, DyadicRes(1, precision))
    ok = not validate(u) and u.w == DyadicRes(3, precision)
    out.append(_report("tri-shift-valid", {"e": 1, "w": 0, "q_max": 10}, 3, u.w.value, ok))
    t = assign_indices(enumerate_hecke(6), DyadicRes(3, precision), [z] * 4, k=1)
    u = conjugate_shift(t, DyadicRes(1, precision))
    ok = not validate(u) and u.w == DyadicRes(8, precision)
    out.append(_report("pent-shift-valid", {"e": 1, "w": 3, "k": 1}, 8, u.w.value, ok))
    for u_div in (3, 5):
        n = 8
        fails = sum(
            dyadic_div(DyadicRes(x, n), u_div) * u_div != DyadicRes(x, n)
            or dyadic_div(DyadicRes(x * u_div, n), u_div) != DyadicRes(x, n)
            for x in range(1 << n)
        )
        out.append(_report(f"divide-by-{u_div}", {"N": n}, 0, fails, fails == 0))
    return out


def suite_conjugacy(a) -> list[dict]:
    return conjugacy_checks(a.seed)


def dyadic_checks(precision: int = 16) -> list[dict]:
    out = []
    fails = 0
    for e in range(1, 200):
        for m in range(precision + 1):
            if (1 << m) > e and pi_m(DyadicRes(e, precision), m) != Fraction(e, 1 << m):
                fails += 1
    out.append(_report("pi-integer", {"N": precision, "e": "1..199"}, 0, fails, fails == 0))
    third = dyadic_div(DyadicRes(1, precision), 3)
    seq = [pi_m(third, m) for m in range(1, precision + 1)]
    # pi_m(1/3) = 1/3 + 1/(3 2^m) for odd m and 2/3 + 1/(3 2^m) for even m
    residual = [s - Fraction(1, 3 * (1 << m)) for m, s in zip(range(1, precision + 1), seq)]
    periodic = all(r == (Fraction(1, 3) if m % 2 else Fraction(2, 3))
                   for m, r in zip(range(1, precision + 1), residual))
    gaps = [abs(seq[i + 1] - seq[i]) for i in range(len(seq) - 1)]
    nonconv = min(gaps[len(gaps) // 2:]) > Fraction(1, 4)
    out.append(_report("pi-one-third", {"N": precision}, "period 2, non-convergent",
                       [str(s) for s in seq], periodic and nonconv))
    return out


def suite_dyadic(a) -> list[dict]:
    return dyadic_checks(a.precision or 16)


SUITE_FUNCS = {
    "tri": suite_tri, "pent": suite_pent, "det": suite_det, "identities": suite_identities,
    "index6": suite_index6, "free": suite_free, "kernel": suite_kernel, "hecke": suite_hecke,
    "cf": suite_cf, "ford": suite_ford, "conjugacy": suite_conjugacy, "dyadic": suite_dyadic,
}


def cmd_verify(a) -> int:
    suites = SUITES if a.suite == "all" else (a.suite,)
    reports = []
    for s in suites:
        reports += SUITE_FUNCS[s](a)
    _emit(json.dumps(reports, indent=2, default=str) + "\n", a.out)
    return 0 if all(r["pass"] for r in reports) else 1


# -- build / conjugate ------------------------------------------------------------------


def _parse_ints(text: str, n: int, what: str) -> list[int]:
    try:
        vals = [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise ConfigError(f"{what}: expected {n} comma-separated integers") from exc
    if len(vals) != n:
        raise ConfigError(f"{what}: expected {n} values, got {len(vals)}")
    return vals


def _parse_window(text: str | None, default):
    if text is None:
        return default
    try:
        lo, hi = (Fraction(v) for v in text.split(","))
    except ValueError as exc:
        raise ConfigError("--window: expected lo,hi") from exc
    if lo >= hi:
        raise ConfigError("--window: lo must be below hi")
    return (lo, hi)


def build_approx(a):
    from .tiling import assign_indices, enumerate_ford, enumerate_hecke, validate

    n = a.precision or 16
    w = DyadicRes(a.w, n)
    if a.model == "triangular":
        if a.k:
            raise ConfigError("--k only applies to the pentagonal model")
        base = _parse_ints(a.base or "0,0", 2, "--base")
        packing = enumerate_ford(a.qmax or 10, _parse_window(a.window, (0, 1)))
    else:
        base = _parse_ints(a.base or "0,0,0,0", 4, "--base")
        win = _parse_window(a.window, None)
        packing = enumerate_hecke(a.word_len or 6, win)
    t = assign_indices(packing, w, [DyadicRes(v, n) for v in base], k=a.k)
    problems = validate(t)
    if problems:
        raise RuntimeError("built approximant fails validation: " + problems[0])
    return t


def cmd_build(a) -> int:
    from .tiling import dumps

    _emit(dumps(build_approx(a)), a.out)
    return 0


def cmd_conjugate(a) -> int:
    from .tiling import conjugate_shift, dumps, loads, validate

    with open(a.infile) as fh:
        t = loads(fh.read())
    if validate(t):
        print("input file fails validation", file=sys.stderr)
        return 1
    u = conjugate_shift(t, DyadicRes(a.e, t.precision))
    if validate(u):
        print("shifted approximant fails validation", file=sys.stderr)
        return 1
    _emit(dumps(u), a.out)
    return 0


# -- render / density -------------------------------------------------------------------


def cmd_render(a) -> int:
    from . import render

    fig = a.figure
    if fig == "ford":
        scene = render.ford_scene(a.qmax or 20, _parse_window(a.window, (0, 1)))
    elif fig == "hecke":
        scene = render.hecke_scene(a.word_len or 6)
    elif fig == "binary":
        scene = render.binary_scene(a.depth)
    elif fig == "threeprong":
        scene = render.binary_scene(a.depth, prongs=3)
    elif fig == "hexagonal":
        scene = render.hexagonal_scene()
    else:
        a.precision = a.precision or 8
        a.qmax = a.qmax or 6
        scene = render.tile_scene(build_approx(a), min(a.depth, a.precision))
    try:
        svg = render.render_svg(scene, a.render_model, a.stroke)
    except render.SceneError as exc:
        raise ConfigError(str(exc)) from exc
    _emit(svg, a.out)
    return 0


def cmd_density(a) -> int:
    from . import density as d

    samples = a.samples or 100_000
    if a.oracle == "gap":
        g = d.gap_area_mc(samples, a.seed)
        rows = [{"radius": "", "estimate": g.value, "stderr": g.stderr, "samples": samples, "seed": a.seed}]
        _emit(_rows_out(rows, a.format), a.out)
        return 0
    radii = [float(v) for v in a.radii.split(",")] if a.radii else None
    center = HPoint(0.0, 1.0)
    euclid = False
    if a.oracle == "hexagonal":
        oracle, center, euclid = d.hexagonal_packing_oracle(1.0), HPoint(0.0, 0.0), True
        radii = radii or [20.0]
    elif a.oracle == "full":
        oracle = d.full_oracle()
    elif a.oracle == "empty":
        oracle = d.empty_oracle()
    elif a.oracle == "triangle":
        oracle = d.ideal_triangle_oracle()
    elif a.oracle == "binary":
        from .tiling import build_degenerate

        oracle = d.degenerate_tiling_oracle(build_degenerate([0] * a.depth, a.depth))
    else:
        if not a.packing:
            raise ConfigError("--oracle packing needs --packing FILE")
        from .tiling import loads

        with open(a.packing) as fh:
            t = loads(fh.read())
        oracle = d.packing_oracle(t.packing)
        center = HPoint(0.5, 0.5)
    radii = radii or [0.5, 1.0, 2.0]
    try:
        curve = d.density_curve(oracle, center, radii, samples, a.seed, euclidean=euclid)
    except d.WindowError as exc:
        raise ConfigError(str(exc)) from exc
    text = d.curve_to_csv(curve) if a.format == "csv" else d.curve_to_json(curve)
    _emit(text, a.out)
    return 0


def _rows_out(rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, sort_keys=True) + "\n"
    lines = ["radius,estimate,stderr,samples,seed"]
    lines += [f"{r['radius']},{r['estimate']!r},{r['stderr']!r},{r['samples']},{r['seed']}" for r in rows]
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out and out != "-":
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- parser ---------------------------------------------------------------------------------


def _positive(v: str) -> int:
    n = int(v)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _precision(v: str) -> int:
    n = _positive(v)
    if n > MAX_PRECISION:
        raise argparse.ArgumentTypeError(f"precision must be <= {MAX_PRECISION}")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="horotile", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp):
        sp.add_argument("--precision", type=_precision, default=None, help="dyadic precision N")
        sp.add_argument("--w", type=int, default=0)
        sp.add_argument("--k", type=int, default=0)
        sp.add_argument("--qmax", type=_positive, default=None)
        sp.add_argument("--word-len", dest="word_len", type=_positive, default=None)
        sp.add_argument("--samples", type=_positive, default=None)
        sp.add_argument("--seed", type=int, default=42)
        sp.add_argument("--out", default=None, help="output path (default stdout)")

    v = sub.add_parser("verify", help="run verification suites")
    common(v)
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("build", help="write a labelled approximant as JSON")
    common(b)
    b.add_argument("--model", choices=("triangular", "pentagonal"), default="triangular")
    b.add_argument("--base", default=None, help="base labels a,b (pentagonal a,b,c,d)")
    b.add_argument("--window", default=None, help="tangent-point window lo,hi")
    b.set_defaults(func=cmd_build)

    c = sub.add_parser("conjugate", help="add e to every index of an approximant file")
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--e", type=int, required=True)
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_conjugate)

    r = sub.add_parser("render", help="SVG figures")
    common(r)
    r.add_argument("--figure", choices=FIGURES, required=True)
    r.add_argument("--model", dest="render_model", choices=("half-plane", "disk"), default="half-plane")
    r.add_argument("--depth", type=_positive, default=5)
    r.add_argument("--stroke", type=float, default=1.0)
    r.add_argument("--window", default=None)
    r.add_argument("--base", default=None)
    r.set_defaults(func=cmd_render, model="triangular")

    d = sub.add_parser("density", help="relative density curves")
    common(d)
    d.add_argument("--oracle", choices=ORACLES, required=True)
    d.add_argument("--radii", default=None, help="comma-separated increasing radii")
    d.add_argument("--depth", type=_positive, default=6)
    d.add_argument("--packing", default=None, help="approximant JSON for --oracle packing")
    d.add_argument("--format", choices=("csv", "json"), default="csv")
    d.set_defaults(func=cmd_density)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"horotile: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
