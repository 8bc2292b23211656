"""Command-line entry point: reproducible pipelines with JSON reports.

Exit codes: 0 all requested checks passed, 1 a check failed, 2 usage or
config error, 3 a search timed out (result incomplete).  Every
subcommand accepts --json PATH; reports embed certificates and input
digests (see report.py).  RYSER_TIMEOUT_SECS overrides the default
solver budget.
"""

import argparse
import json
import os
import sys

from . import __version__
from .analysis import (
    classify_extensions,
    degree_fingerprint,
    exact_isomorphic,
    fingerprint_str,
    maximal_closure_description,
    minimize,
)
from .construct import (
    ConstructionSpec,
    DegreeProfile,
    build_extension,
    extract_pair_subhypergraph,
    profile_count,
    select_f_by_profile,
    select_f_default,
    uniformize,
    validate_spec,
)
from .errors import ConfigError, RyserError, SolverTimeout
from .gf import FiniteField, is_prime
from .hypergraph import dumps_rhg, is_intersecting, read_rhg, vid_str, write_rhg
from .plane import bruck_ryser_excluded, build_plane, truncate
from .report import (
    Check,
    cover_certificate,
    input_entry,
    intersecting_certificate,
    make_report,
    matching_certificate,
    overall_status,
    ratio_certificate,
    sha256_bytes,
    write_json_atomic,
)
from .solver import cover_number, matching_number, verify_ryser_ratio

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_TIMEOUT = 3


def default_timeout() -> float:
    raw = os.environ.get("RYSER_TIMEOUT_SECS")
    if raw is None:
        return 60.0
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"RYSER_TIMEOUT_SECS={raw!r} is not a number") from None


def resolve_timeout(flag_value, cfg_value=None):
    if flag_value is not None:
        return flag_value
    if cfg_value is not None:
        return float(cfg_value)
    return default_timeout()


def factor_prime_power(q: int):
    if q < 2:
        raise ConfigError(f"q={q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k = 0
    n = q
    while n % p == 0:
        n //= p
        k += 1
    if n != 1 or not is_prime(p):
        raise ConfigError(f"q={q} is not a prime power")
    return p, k


def build_truncation(q: int, vertex=None):
    return truncate(build_plane(FiniteField(*factor_prime_power(q))), vertex)


def _finish(args, command, parameters, inputs, checks, artifacts=None):
    report = make_report(command, parameters, inputs, checks)
    if artifacts:
        report["artifacts"] = artifacts
    json_path = getattr(args, "json", None)
    if json_path:
        write_json_atomic(json_path, report)
    status = report["overall"]
    if status == "fail":
        return EXIT_FAIL
    if status == "timeout":
        return EXIT_TIMEOUT
    return EXIT_PASS


def _artifact_entry(path, text):
    return {"path": os.fspath(path), "sha256": sha256_bytes(text.encode())}


# --- field / plane / truncate ---


def cmd_field(args):
    f = FiniteField(args.p, args.k)
    print(f"GF({f.q}) = GF({f.p}^{f.k}), modulus coefficients (low degree first): {list(f.modulus)}")
    if args.dump:
        if f.q <= 64:
            print("add table:")
            for a in range(f.q):
                print(" ".join(str(f.add(a, b)) for b in range(f.q)))
            print("mul table:")
            for a in range(f.q):
                print(" ".join(str(f.mul(a, b)) for b in range(f.q)))
        else:
            print(f"(tables suppressed for q={f.q} > 64)")
    if args.json:
        out = {"p": f.p, "k": f.k, "q": f.q, "modulus": list(f.modulus)}
        if f.q <= 64:
            out["add_table"] = [[f.add(a, b) for b in range(f.q)] for a in range(f.q)]
            out["mul_table"] = [[f.mul(a, b) for b in range(f.q)] for a in range(f.q)]
        write_json_atomic(args.json, out)
    return EXIT_PASS


def cmd_plane(args):
    try:
        p, k = factor_prime_power(args.q)
    except ConfigError:
        excluded = bruck_ryser_excluded(args.q)
        verdict = ("excluded by the Bruck-Ryser criterion" if excluded
                   else "not excluded by the Bruck-Ryser criterion, existence open here")
        print(f"order {args.q} is not a prime power: no plane built; {verdict}")
        if args.json:
            write_json_atomic(args.json, {
                "q": args.q, "built": False, "bruck_ryser_excluded": excluded,
            })
        return EXIT_FAIL
    pp = build_plane(FiniteField(p, k))
    n = len(pp.points)
    print(f"PG(2,{args.q}): {n} points, {n} lines, {args.q + 1} points per line")
    if args.dump:
        lines = [
            " ".join(pp.point_label(pi) for pi in pts) for pts in pp.line_points
        ]
        from .hypergraph import atomic_write_text

        atomic_write_text(args.dump, "\n".join(lines) + "\n")
        print(f"wrote {args.dump}")
    if args.json:
        write_json_atomic(args.json, {
            "q": args.q,
            "built": True,
            "points": n,
            "lines": n,
            "line_size": args.q + 1,
            "bruck_ryser_excluded": bruck_ryser_excluded(args.q),
        })
    return EXIT_PASS


def cmd_truncate(args):
    t = build_truncation(args.q, args.vertex)
    text = dumps_rhg(t)
    write_rhg(t, args.out)
    checks = []
    with Check("truncation-structure") as c:
        r = args.q + 1
        ok_shape = (
            t.num_sides == r
            and t.side_sizes == (args.q,) * r
            and t.num_edges == args.q * args.q
            and t.uniformity == r
        )
        inter, wit = is_intersecting(t)
        c.ok(ok_shape and inter, intersecting_certificate(inter, wit),
             detail=f"{r} sides of {args.q}, {t.num_edges} edges")
    checks.append(c)
    print(f"wrote {args.out}: {t.num_sides} sides, {t.num_edges} edges")
    return _finish(args, "truncate",
                   {"q": args.q, "vertex": args.vertex if args.vertex is not None else 0,
                    "out": os.fspath(args.out)},
                   [], checks, artifacts=[_artifact_entry(args.out, text)])


# --- construct ---


def parse_f_edges(text, r):
    out = [None] * r
    for part in text.split(","):
        i, _, e = part.partition(":")
        try:
            i, e = int(i), int(e)
        except ValueError:
            raise ConfigError(f"bad --f-edges entry {part!r}, expected i:edge") from None
        if not 1 <= i <= r:
            raise ConfigError(f"--f-edges side {i} out of range 1..{r}")
        out[i - 1] = e
    if any(v is None for v in out):
        missing = [str(i + 1) for i, v in enumerate(out) if v is None]
        raise ConfigError(f"--f-edges missing sides {','.join(missing)}")
    return tuple(out)


def make_spec(base, s_edge, args):
    if args.f_default:
        return select_f_default(base, s_edge)
    if args.f_edges:
        return ConstructionSpec(base, s_edge, parse_f_edges(args.f_edges, base.num_sides))
    if args.profile:
        x = tuple(int(v) for v in args.profile.split(","))
        prof = DegreeProfile(base.num_sides, x)
        return select_f_by_profile(base, s_edge, prof, strict=not args.relaxed_profile)
    raise ConfigError("choose one of --f-default, --f-edges, --profile")


def spec_block(spec, base_path=None):
    out = {"s_edge": spec.s_edge, "f_edges": list(spec.f_edges)}
    if base_path is not None:
        out["base"] = os.fspath(base_path)
    return out


def cmd_construct(args):
    args.timeout = resolve_timeout(args.timeout)
    base = read_rhg(args.base)
    spec = make_spec(base, args.s_edge, args)
    checks = []
    with Check("construction-preconditions") as c:
        try:
            violations = validate_spec(
                spec, check_cover_uniqueness=not args.skip_cover_check,
                timeout=args.timeout, jobs=args.jobs,
            )
            if args.skip_cover_check and not violations:
                c.skip(detail="structural checks passed; cover-uniqueness check skipped "
                              "(construction unvalidated)")
            else:
                c.ok(not violations,
                     detail="; ".join(map(str, violations)) or "all hypotheses hold")
        except SolverTimeout as e:
            c.timeout(str(e))
    checks.append(c)
    if c.status in ("fail", "timeout"):
        return _finish(args, "construct", vars_params(args), [input_entry(args.base)], checks)
    h = build_extension(spec, check=False)
    if args.uniformize:
        h = uniformize(h)
    text = dumps_rhg(h)
    write_rhg(h, args.out)
    print(f"wrote {args.out}: {h.num_sides} sides, {h.num_edges} edges")
    report_extra = {"spec": spec_block(spec, args.base)}
    rep = make_report("construct", vars_params(args), [input_entry(args.base)], checks)
    rep.update(report_extra)
    rep["artifacts"] = [_artifact_entry(args.out, text)]
    if args.json:
        write_json_atomic(args.json, rep)
    return EXIT_PASS if rep["overall"] != "fail" else EXIT_FAIL


def vars_params(args):
    skip = {"func", "json"}
    return {k: v for k, v in vars(args).items() if k not in skip and v is not None}


# --- verify ---


def cmd_verify(args):
    args.timeout = resolve_timeout(args.timeout)
    h = read_rhg(args.file)
    run_all = not (args.tau or args.nu or args.ratio or args.enumerate_min_covers)
    checks = []
    if args.tau or args.enumerate_min_covers or run_all:
        with Check("cover-number") as c:
            try:
                res = cover_number(h, enumerate_all=args.enumerate_min_covers,
                                   timeout=args.timeout, jobs=args.jobs)
                c.ok(True, cover_certificate(res))
                print(f"tau = {res.tau}" + (
                    f" ({len(res.all_min_covers)} minimum covers)"
                    if res.all_min_covers is not None else ""))
            except SolverTimeout as e:
                c.timeout(str(e))
        checks.append(c)
    if args.nu or run_all:
        with Check("matching-number") as c:
            try:
                res = matching_number(h, timeout=args.timeout)
                c.ok(True, matching_certificate(res))
                print(f"nu = {res.nu}")
            except SolverTimeout as e:
                c.timeout(str(e))
        checks.append(c)
    if args.ratio:
        with Check("ryser-ratio") as c:
            try:
                rep = verify_ryser_ratio(h, timeout=args.timeout, jobs=args.jobs)
                c.ok(rep.is_ryser_extremal, ratio_certificate(rep),
                     detail=f"tau={rep.tau}, nu={rep.nu}, r={rep.r}")
                print(f"ratio: tau={rep.tau} nu={rep.nu} "
                      f"{'extremal' if rep.is_ryser_extremal else 'not extremal'}")
            except SolverTimeout as e:
                c.timeout(str(e))
        checks.append(c)
    return _finish(args, "verify", vars_params(args), [input_entry(args.file)], checks)


# --- minimize ---


def cmd_minimize(args):
    args.timeout = resolve_timeout(args.timeout)
    h = read_rhg(args.file)
    checks = []
    trace = None
    with Check("minimality-reduction") as c:
        try:
            trace = minimize(h, timeout=args.timeout, jobs=args.jobs,
                             order=args.order)
            cert = {
                "kind": "minimization",
                "target_tau": trace.target_tau,
                "deleted": [
                    {"original_index": d.original_index,
                     "label": d.label,
                     "tau_after": d.cert.tau}
                    for d in trace.deleted
                ],
                "kept": [
                    {"original_index": k.original_index,
                     "label": k.label,
                     "tau_without": k.cert.tau,
                     "witness_without": [vid_str(v) for v in k.cert.witness]}
                    for k in trace.kept
                ],
            }
            every_critical = all(k.cert.tau == trace.target_tau - 1 for k in trace.kept)
            c.ok(every_critical, cert,
                 detail=f"deleted {len(trace.deleted)}, kept {len(trace.kept)}")
        except SolverTimeout as e:
            c.timeout(str(e))
    checks.append(c)
    artifacts = None
    if trace is not None and args.out:
        text = dumps_rhg(trace.final)
        write_rhg(trace.final, args.out)
        artifacts = [_artifact_entry(args.out, text)]
        print(f"wrote {args.out}: {trace.final.num_edges} edges "
              f"({len(trace.deleted)} deleted)")
    return _finish(args, "minimize", vars_params(args), [input_entry(args.file)],
                   checks, artifacts=artifacts)


# --- maximal-check ---


def load_spec_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read spec file {path}: {e}") from None
    if "spec" in data:
        data = data["spec"]
    for key in ("base", "s_edge", "f_edges"):
        if key not in data:
            raise ConfigError(f"spec file {path} lacks key {key!r}")
    base_path = data["base"]
    if not os.path.isabs(base_path):
        base_path = os.path.join(os.path.dirname(os.path.abspath(path)), base_path)
    base = read_rhg(base_path)
    return ConstructionSpec(base, int(data["s_edge"]), tuple(int(x) for x in data["f_edges"])), base_path


def cmd_maximal_check(args):
    args.timeout = resolve_timeout(args.timeout)
    h = read_rhg(args.file)
    spec, base_path = load_spec_json(args.spec)
    checks = []
    with Check("input-matches-spec") as c:
        rebuilt = build_extension(spec, check=False)
        c.ok(rebuilt == h, detail="input file equals the spec's construction"
             if rebuilt == h else "input file differs from the spec's construction")
    checks.append(c)
    if c.status == "fail":
        return _finish(args, "maximal-check", vars_params(args),
                       [input_entry(args.file), input_entry(args.spec)], checks)
    cls = None
    with Check("addable-edge-classification") as c:
        try:
            cls = classify_extensions(h, spec, timeout=args.timeout, jobs=args.jobs)
            cert = {
                "kind": "extension-classification",
                "r": cls.r,
                "counts": cls.counts,
                "violations": [
                    {"fresh_side": v.fresh_side,
                     "vertices": [vid_str(x) for x in v.vertices]}
                    for v in cls.violations[:20]
                ],
            }
            if cls.pattern_guaranteed:
                c.ok(not cls.violations, cert,
                     detail=f"{len(cls.candidates)} candidates, "
                            f"{len(cls.violations)} violations")
            else:
                c.skip(detail=f"r={cls.r} < 5: classification recorded, "
                              f"pattern guarantee not asserted "
                              f"({len(cls.violations)} candidates outside the patterns)",
                       certificate=cert)
            print(f"candidates: {cls.counts}")
        except SolverTimeout as e:
            c.timeout(str(e))
    checks.append(c)
    if cls is not None and cls.pattern_guaranteed and not cls.violations:
        with Check("maximal-closure-description") as c:
            rep = maximal_closure_description(h, spec, cls)
            c.ok(len(rep.families) == 2 * rep.r, {
                "kind": "maximal-closure",
                "families": [
                    {"kind": f.kind, "index": f.index, "fresh_side": f.fresh_side,
                     "fixed_vertices": [vid_str(v) for v in f.fixed_vertices]}
                    for f in rep.families
                ],
            })
        checks.append(c)
    return _finish(args, "maximal-check", vars_params(args),
                   [input_entry(args.file), input_entry(args.spec)], checks)


# --- fingerprint / iso / profiles ---


def cmd_fingerprint(args):
    h = read_rhg(args.file)
    fp = degree_fingerprint(h)
    print(fingerprint_str(fp))
    if args.json:
        write_json_atomic(args.json, {
            "file": os.fspath(args.file),
            "fingerprint": list(fp),
            "compact": fingerprint_str(fp),
        })
    return EXIT_PASS


def cmd_iso(args):
    a = read_rhg(args.a)
    b = read_rhg(args.b)
    res = exact_isomorphic(a, b)
    print("isomorphic" if res.isomorphic else "not isomorphic")
    if args.json:
        out = {"isomorphic": res.isomorphic}
        if res.isomorphic:
            out["side_perm"] = list(res.side_perm)
            out["vertex_map"] = [[vid_str(u), vid_str(v)] for u, v in res.vertex_map]
        write_json_atomic(args.json, out)
    return EXIT_PASS if res.isomorphic else EXIT_FAIL


def cmd_profiles(args):
    pc = profile_count(args.r, delta=args.delta, t=args.t)
    print(f"r={pc.r} t={pc.t} values in [{pc.value_lo}, {pc.value_hi}]: "
          f"{pc.count} profiles" + (f" ({pc.note})" if pc.note else ""))
    if args.json:
        write_json_atomic(args.json, {
            "r": pc.r, "delta": pc.delta, "t": pc.t,
            "value_lo": pc.value_lo, "value_hi": pc.value_hi,
            "count": pc.count, "formula_bound": pc.formula_bound,
            "note": pc.note,
        })
    return EXIT_PASS


# --- pipeline ---

_CONFIG_KEYS = {
    "q", "vertex", "s_edge", "f", "f_edges", "profile", "relaxed_profile",
    "all_checks", "minimize", "maximal_check", "out_dir", "jobs", "timeout",
}


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def cmd_pipeline(args):
    cfg = load_config(args.config) if args.config else {}
    q = args.q if args.q is not None else cfg.get("q")
    if q is None:
        raise ConfigError("pipeline needs --q or a config with q")
    q = int(q)
    vertex = args.vertex if args.vertex is not None else cfg.get("vertex")
    s_edge = args.s_edge if args.s_edge is not None else int(cfg.get("s_edge", 0))
    jobs = args.jobs if args.jobs != 1 else int(cfg.get("jobs", 1))
    timeout = resolve_timeout(args.timeout, cfg.get("timeout"))
    mode = "default"
    if args.f_edges or cfg.get("f") == "edges":
        mode = "edges"
    if args.profile or cfg.get("f") == "profile":
        mode = "profile"
    relaxed = args.relaxed_profile or bool(cfg.get("relaxed_profile"))
    do_min = args.minimize or bool(cfg.get("minimize")) or args.all_checks or bool(cfg.get("all_checks"))
    do_max = args.maximal_check or bool(cfg.get("maximal_check")) or args.all_checks or bool(cfg.get("all_checks"))
    out_dir = args.out_dir or cfg.get("out_dir")

    t = build_truncation(q, vertex)
    r = q + 1
    checks = []
    artifacts = []

    def save(h, filename):
        if out_dir is None:
            return
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, filename)
        text = dumps_rhg(h)
        write_rhg(h, path)
        artifacts.append(_artifact_entry(path, text))

    save(t, f"t{r}.rhg")
    with Check("base-properties") as c:
        try:
            ok, wit = is_intersecting(t)
            res = cover_number(t, upper_hint=q, timeout=timeout, jobs=jobs)
            c.ok(ok and res.tau == q and t.uniformity == r,
                 cover_certificate(res),
                 detail=f"intersecting={ok}, tau={res.tau} (expected {q})")
        except SolverTimeout as e:
            c.timeout(str(e))
    checks.append(c)

    if mode == "edges":
        f_edges_text = args.f_edges or cfg.get("f_edges")
        if isinstance(f_edges_text, list):
            spec = ConstructionSpec(t, s_edge, tuple(int(x) for x in f_edges_text))
        else:
            spec = ConstructionSpec(t, s_edge, parse_f_edges(f_edges_text, r))
    elif mode == "profile":
        x_text = args.profile or cfg.get("profile")
        x = tuple(int(v) for v in x_text.split(",")) if isinstance(x_text, str) \
            else tuple(int(v) for v in x_text)
        spec = select_f_by_profile(t, s_edge, DegreeProfile(r, x), strict=not relaxed)
    else:
        spec = select_f_default(t, s_edge)

    with Check("base-cover-uniqueness") as c:
        try:
            violations = validate_spec(spec, timeout=timeout, jobs=jobs)
            c.ok(not violations, detail="; ".join(map(str, violations)) or
                 "reduced base has cover number r-1 with only the sides as minimum covers")
        except SolverTimeout as e:
            c.timeout(str(e))
    checks.append(c)
    if c.status == "fail":
        return _finish(args, "pipeline", _pipeline_params(q, vertex, s_edge, mode, do_min, do_max),
                       [], checks, artifacts=artifacts)

    h = build_extension(spec, check=False)
    save(h, f"ext_q{q}_{mode}.rhg")
    with Check("extension-intersecting") as c:
        ok, wit = is_intersecting(h)
        c.ok(ok, intersecting_certificate(ok, wit))
    checks.append(c)
    with Check("extension-cover-number") as c:
        try:
            res = cover_number(h, upper_hint=r, timeout=timeout, jobs=jobs)
            c.ok(res.tau == r, cover_certificate(res), detail=f"tau={res.tau} (expected {r})")
            print(f"tau(extension) = {res.tau}")
        except SolverTimeout as e:
            c.timeout(str(e))
    checks.append(c)

    u = uniformize(h)
    save(u, f"ext_q{q}_{mode}_uniform.rhg")
    with Check("uniform-structure") as c:
        ok, wit = is_intersecting(u)
        c.ok(ok and u.num_sides == r + 1 and u.uniformity == r + 1,
             intersecting_certificate(ok, wit),
             detail=f"{u.num_sides} sides, uniformity {u.uniformity}")
    checks.append(c)
    with Check("ryser-ratio") as c:
        try:
            rep = verify_ryser_ratio(u, timeout=timeout, jobs=jobs)
            c.ok(rep.is_ryser_extremal and rep.tau == r, ratio_certificate(rep),
                 detail=f"tau={rep.tau}, nu={rep.nu}")
        except SolverTimeout as e:
            c.timeout(str(e))
    checks.append(c)

    if do_min:
        with Check("minimality-reduction") as c:
            try:
                trace = minimize(u, timeout=timeout, jobs=jobs)
                pair_labels = [
                    lab for lab in u.edge_labels if lab.startswith(("E2(", "E3("))
                ]
                kept_labels = set(trace.final.edge_labels)
                pairs_kept = all(lab in kept_labels for lab in pair_labels)
                every_critical = all(
                    k.cert.tau == trace.target_tau - 1 for k in trace.kept
                )
                c.ok(pairs_kept and every_critical,
                     {"kind": "minimization",
                      "deleted": len(trace.deleted), "kept": len(trace.kept)},
                     detail=f"deleted {len(trace.deleted)} edges")
                save(trace.final, f"minimized_q{q}_{mode}.rhg")
            except SolverTimeout as e:
                c.timeout(str(e))
        checks.append(c)

    if do_max:
        with Check("addable-edge-classification") as c:
            try:
                cls = classify_extensions(h, spec, timeout=timeout, jobs=jobs)
                cert = {"kind": "extension-classification", "r": cls.r,
                        "counts": cls.counts}
                if cls.pattern_guaranteed:
                    c.ok(not cls.violations, cert,
                         detail=f"{len(cls.violations)} violations")
                else:
                    c.skip(detail=f"r={cls.r} < 5: recorded only", certificate=cert)
            except SolverTimeout as e:
                c.timeout(str(e))
        checks.append(c)

    return _finish(args, "pipeline",
                   _pipeline_params(q, vertex, s_edge, mode, do_min, do_max),
                   [], checks, artifacts=artifacts)


def _pipeline_params(q, vertex, s_edge, mode, do_min, do_max):
    return {"q": q, "vertex": vertex if vertex is not None else 0,
            "s_edge": s_edge, "f_mode": mode,
            "minimize": do_min, "maximal_check": do_max}


# --- corpus ---


def corpus_generate(out_dir, jobs=1, timeout=None):
    """Write the standard desk-scale corpus plus expected-report files.

    Deterministic: two runs produce byte-identical files.
    """
    os.makedirs(out_dir, exist_ok=True)
    items = []

    def emit(h, filename):
        path = os.path.join(out_dir, filename)
        text = dumps_rhg(h)
        write_rhg(h, path)
        inter, _ = is_intersecting(h) if h.num_edges else (None, None)
        expected = {
            "file": filename,
            "sha256": sha256_bytes(text.encode()),
            "name": h.name,
            "num_sides": h.num_sides,
            "side_sizes": list(h.side_sizes),
            "num_edges": h.num_edges,
            "edge_sizes": sorted({len(e) for e in h.edges}),
            "intersecting": inter,
        }
        write_json_atomic(os.path.join(out_dir, filename + ".expected.json"), expected)
        items.append(filename)

    for q in (2, 3, 4, 5):
        emit(build_truncation(q), f"t{q + 1}.rhg")
    for q in (3, 4, 5):
        t = build_truncation(q)
        r = q + 1
        spec = select_f_default(t, 0)
        if validate_spec(spec, timeout=timeout, jobs=jobs):
            raise AssertionError(f"default spec invalid for q={q}")
        h = build_extension(spec, check=False)
        emit(h, f"ext_q{q}_default.rhg")
        emit(uniformize(h), f"ext_q{q}_default_uniform.rhg")
        pspec = select_f_by_profile(t, 0, DegreeProfile(r, (1,)), strict=False)
        if validate_spec(pspec, timeout=timeout, jobs=jobs):
            raise AssertionError(f"profile spec invalid for q={q}")
        hp = build_extension(pspec, check=False)
        emit(hp, f"ext_q{q}_profile.rhg")
        emit(uniformize(hp), f"ext_q{q}_profile_uniform.rhg")
    t26 = build_truncation(25)
    for x1 in (4, 5):
        spec = select_f_by_profile(t26, 0, DegreeProfile(26, (x1,)), strict=True)
        h = build_extension(spec, check=True, check_cover_uniqueness=False)
        emit(extract_pair_subhypergraph(h), f"pairs_r26_x{x1}.rhg")
    return items


def cmd_corpus(args):
    try:
        items = corpus_generate(args.out, jobs=args.jobs,
                                timeout=resolve_timeout(args.timeout))
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    for name in items:
        print(name)
    if args.json:
        write_json_atomic(args.json, {"out_dir": os.fspath(args.out), "files": items})
    return EXIT_PASS


# --- parser ---


def _add_common(p, timeout=True, jobs=True):
    p.add_argument("--json", metavar="PATH", help="write a JSON report here")
    if timeout:
        p.add_argument("--timeout", type=float, default=None,
                       help="solver wall-clock budget in seconds "
                            "(default: RYSER_TIMEOUT_SECS or 60)")
    if jobs:
        p.add_argument("--jobs", type=int, default=1, help="worker processes for searches")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="ryser",
        description="Construct and exactly verify Ryser-extremal intersecting hypergraphs.",
    )
    ap.add_argument("--version", action="version", version=f"ryser {__version__}")
    sub = ap.add_subparsers(dest="command")

    p = sub.add_parser("field", help="build GF(p^k) and optionally dump its tables")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--dump", action="store_true")
    _add_common(p, timeout=False, jobs=False)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("plane", help="build PG(2,q)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--dump", metavar="FILE", help="write one line per plane line, "
                                                  "listing normalized point triples")
    _add_common(p, timeout=False, jobs=False)
    p.set_defaults(func=cmd_plane)

    p = sub.add_parser("truncate", help="truncate PG(2,q) to an .rhg hypergraph")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--vertex", type=int, default=None)
    p.add_argument("--out", required=True)
    _add_common(p, timeout=False, jobs=False)
    p.set_defaults(func=cmd_truncate)

    p = sub.add_parser("construct", help="build the anchored extension hypergraph")
    p.add_argument("--base", required=True)
    p.add_argument("--s-edge", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--f-default", action="store_true",
                   help="F_i = least-indexed edge other than the anchor through s_i")
    g.add_argument("--f-edges", metavar="i:e,...",
                   help="explicit selected edges, 1-based side : 0-based edge index")
    g.add_argument("--profile", metavar="x1,x2,...", help="degree-profile selection")
    p.add_argument("--relaxed-profile", action="store_true",
                   help="accept profiles outside the strict counting bounds")
    p.add_argument("--uniformize", action="store_true")
    p.add_argument("--skip-cover-check", action="store_true",
                   help="skip the expensive cover-uniqueness hypothesis check")
    p.add_argument("--out", required=True)
    p.add_argument("--report", dest="json", metavar="PATH",
                   help="write a JSON report here (alias of --json)")
    _add_common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="exact cover/matching verification")
    p.add_argument("file")
    p.add_argument("--tau", action="store_true")
    p.add_argument("--nu", action="store_true")
    p.add_argument("--enumerate-min-covers", action="store_true")
    p.add_argument("--ratio", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("minimize", help="edge-minimality reduction with certificates")
    p.add_argument("file")
    p.add_argument("--out")
    p.add_argument("--order", choices=("asc", "desc"), default="asc",
                   help="edge scan order for deletions")
    p.add_argument("--report", dest="json", metavar="PATH")
    _add_common(p)
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("maximal-check", help="classify every addable edge")
    p.add_argument("file")
    p.add_argument("--spec", required=True, help="JSON with base path, s_edge, f_edges")
    p.add_argument("--report", dest="json", metavar="PATH")
    _add_common(p)
    p.set_defaults(func=cmd_maximal_check)

    p = sub.add_parser("fingerprint", help="canonical degree-multiset fingerprint")
    p.add_argument("file")
    _add_common(p, timeout=False, jobs=False)
    p.set_defaults(func=cmd_fingerprint)

    p = sub.add_parser("iso", help="exact isomorphism test (exit 0 iff isomorphic)")
    p.add_argument("a")
    p.add_argument("b")
    _add_common(p, timeout=False, jobs=False)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("profiles", help="count valid degree profiles")
    p.add_argument("--r", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--delta", type=float)
    g.add_argument("--t", type=int)
    _add_common(p, timeout=False, jobs=False)
    p.set_defaults(func=cmd_profiles)

    p = sub.add_parser("pipeline", help="plane -> truncate -> construct -> verify")
    p.add_argument("--config", help="JSON config file (flags override it)")
    p.add_argument("--q", type=int)
    p.add_argument("--vertex", type=int, default=None)
    p.add_argument("--s-edge", type=int, default=None)
    p.add_argument("--f-default", action="store_true")
    p.add_argument("--f-edges", metavar="i:e,...")
    p.add_argument("--profile", metavar="x1,x2,...")
    p.add_argument("--relaxed-profile", action="store_true")
    p.add_argument("--all-checks", action="store_true")
    p.add_argument("--minimize", action="store_true")
    p.add_argument("--maximal-check", action="store_true")
    p.add_argument("--out-dir")
    _add_common(p)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("corpus", help="emit the standard desk-scale corpus")
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(func=cmd_corpus)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "func", None):
        parser.print_help()
        return EXIT_USAGE
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SolverTimeout as e:
        print(f"timeout: {e}", file=sys.stderr)
        return EXIT_TIMEOUT
    except (RyserError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
