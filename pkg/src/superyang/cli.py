"""Command line front end.

    superyang verify --profile 1,2 --rep defining --suite all
    superyang pbw --M 3 --n 1 --max-degree 4
    superyang cert --file cert.json
    superyang weights --profile 4,4 --l 0,0,-1,-1,0,0,-1,-1

Exit codes: 0 when every selected non-conjectural check passes, 1 on a
failing check, 2 on a usage or configuration error.
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from . import pbw as pbw_mod
from .exactalg import Poly, RationalScalar, parse_scalar
from .grading import GradingProfile, make_profile
from .repcert import (WeightVector, check_osp_weight_integrality, check_symmetry_mu, complete_mu, l_from_mu,
                      run_certificate)
from .reports import Report
from .twisted import (EMBEDDINGS, build_S, check_coideal, check_comS_entrywise, check_comS_matrix, check_embeddings,
                      check_F_inclusion, check_g_automorphism, check_hash_automorphism, check_osp_action,
                      check_reflection, check_symmetry, check_tau_automorphism, check_theta_independence,
                      embedding_data, extract_highest_weight)
from .yangian import (GlRep, check_comYMN, check_rtt, character, defining_rep, direct_sum, dual_rep, eval_T,
                      iso_ymn_ynm, perturbed, shifted, zero_rep)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    profile: Optional[GradingProfile] = None
    rep: Optional[GlRep] = None
    identities: List[str] = field(default_factory=list)
    output: Optional[str] = None
    options: dict = field(default_factory=dict)


# identity suite

class Context:
    """Objects shared by the checks of one verify run, built lazily."""

    def __init__(self, profile: GradingProfile, rep: GlRep):
        self.profile = profile
        self.rep = rep
        self._cache: Dict[str, object] = {}

    def _get(self, key: str, make: Callable):
        if key not in self._cache:
            self._cache[key] = make()
        return self._cache[key]

    @property
    def T(self):
        return self._get("T", lambda: eval_T(self.rep, self.profile))

    @property
    def T_yangian(self):
        p = self.profile
        return self._get("Ty", lambda: eval_T(self.rep, make_profile(p.M, p.N, "yangian")))

    @property
    def S(self):
        return self._get("S", lambda: build_S(self.T, self.profile))


def _skipped(name: str, reason: str) -> Report:
    r = Report(name)
    r.skipped = reason
    return r


def _g_auto(ctx: Context) -> Report:
    u = Poly.u()
    rep = Report("G_AUTO")
    for label, g in (("even", RationalScalar(u * u + 1, u * u)), ("odd", RationalScalar(u + 1, u))):
        sub = check_g_automorphism(ctx.S, g)
        rep.details[label] = sub.details
        rep.absorb(sub, label)
    return rep


def _hash(ctx: Context) -> Report:
    if ctx.profile.M % 2 or ctx.profile.M == 0:
        return _skipped("HASH_AUTO", "needs even M > 0")
    return check_hash_automorphism(ctx.S)


def _embedding(which: str) -> Callable[[Context], Report]:
    def run(ctx: Context) -> Report:
        try:
            embedding_data(ctx.profile, which)
        except ValueError as e:
            return _skipped("EMBED_" + which.upper(), str(e))
        return check_embeddings(ctx.S, which)

    return run


def _theta(ctx: Context) -> Report:
    p = ctx.profile
    if p.K > 6:
        return _skipped("THETA_INDEP", "profile enumeration limited to K <= 6")
    return check_theta_independence(ctx.rep, p.M, p.N)


def _osp_f(ctx: Context) -> Report:
    F = ctx.S.coefficient(1)
    try:
        return check_F_inclusion(F, ctx.profile)
    except ValueError as e:
        r = Report("OSP_F")
        r.fail("precondition", str(e))
        return r


def _hw(ctx: Context) -> Report:
    rep = Report("HW_EXTRACT")
    found = extract_highest_weight(ctx.S)
    if found is None:
        rep.fail("no highest weight vector over Q")
        return rep
    mu, vec = found
    rep.details["mu"] = {str(i): str(f) for i, f in mu.entries.items()}
    rep.details["vector"] = [str(x) for x in vec]
    rep.absorb(check_symmetry_mu(mu, ctx.profile), "symmetry-mu")
    return rep


def _coideal(ctx: Context) -> Report:
    return check_coideal(ctx.T, ctx.T)


def _rename(name: str, fn: Callable[[Context], Report]) -> Callable[[Context], Report]:
    def run(ctx: Context) -> Report:
        r = fn(ctx)
        r.identity = name
        return r

    return run


REGISTRY: Dict[str, Callable[[Context], Report]] = {
    "RTT": lambda c: check_rtt(c.T_yangian),
    "COM_YMN": lambda c: check_comYMN(c.T_yangian),
    "ISO_NM": lambda c: iso_ymn_ynm(c.T_yangian),
    "TAU_AUTO": lambda c: check_tau_automorphism(c.T),
    "RSRS": lambda c: check_reflection(c.S),
    "TAU_S": lambda c: check_symmetry(c.S),
    "COM_S_MATRIX": lambda c: check_comS_matrix(c.S),
    "COM_S_ENTRY": lambda c: check_comS_entrywise(c.S),
    "OSP_ACTION": lambda c: check_osp_action(c.S),
    "OSP_F": _osp_f,
    "G_AUTO": _g_auto,
    "HASH_AUTO": _hash,
    "COIDEAL": _coideal,
    "THETA_INDEP": _theta,
    "HW_EXTRACT": _hw,
}
for _w in EMBEDDINGS:
    REGISTRY["EMBED_" + _w.upper()] = _rename("EMBED_" + _w.upper(), _embedding(_w))

SUITES = {
    "all": sorted(REGISTRY),
    "yangian": ["COM_YMN", "ISO_NM", "RTT"],
    "twisted": ["COM_S_ENTRY", "COM_S_MATRIX", "OSP_ACTION", "RSRS", "TAU_AUTO", "TAU_S"],
}


def run_identities(profile: GradingProfile, rep: GlRep, names: List[str]) -> List[Report]:
    ctx = Context(profile, rep)
    out = []
    for name in sorted(set(names)):
        r = REGISTRY[name](ctx)
        r.identity = name
        out.append(r)
    return out


# parsing helpers

def parse_profile(text: str, theta: Optional[str] = None) -> GradingProfile:
    try:
        M, N = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"profile must look like M,N: {text!r}")
    th = [int(x) for x in theta.split(",")] if theta else None
    try:
        return make_profile(M, N, "twisted", th)
    except ValueError as e:
        raise UsageError(str(e))


def parse_rep(spec: str, profile: GradingProfile) -> GlRep:
    """defining, dual, zero, character:x, shifted:x (defining shifted by x),
    sum (defining + dual), perturbed (defining with one entry changed)."""
    name, _, arg = spec.partition(":")
    K = profile.K
    if name == "defining":
        return defining_rep(profile)
    if name == "dual":
        return dual_rep(profile)
    if name == "zero":
        return zero_rep(K)
    if name == "character":
        return character(K, arg or "1")
    if name == "shifted":
        return shifted(defining_rep(profile), arg or "1")
    if name == "sum":
        return direct_sum(defining_rep(profile), dual_rep(profile))
    if name == "perturbed":
        return perturbed(defining_rep(profile), 1, 2, 0, 0, arg or "1")
    raise UsageError(f"unknown rep {spec!r}")


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read {path}: {e}")


def _finish(payload: dict, reports: List[Report], args) -> int:
    payload["checks"] = [r.to_json() for r in sorted(reports, key=lambda r: r.identity)]
    ok = all(r.passed for r in reports)
    payload["pass"] = ok
    payload["timestamp"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    if args.json:
        print(text)
    else:
        for r in sorted(reports, key=lambda r: r.identity):
            verdict = "SKIP" if r.skipped else ("PASS" if r.passed else "FAIL")
            extra = f" ({r.skipped})" if r.skipped else ""
            if not r.passed:
                extra = f" ({r.n_failures} failing entries)"
            print(f"{verdict} {r.identity}{extra}")
    return 0 if ok else 1


# subcommands

def cmd_verify(args) -> int:
    profile = parse_profile(args.profile, args.theta)
    if args.rep_file:
        try:
            rep = GlRep.from_json(_load_json(args.rep_file), profile.K)
        except (KeyError, ValueError, TypeError) as e:
            raise UsageError(f"bad rep file: {e}")
    else:
        rep = parse_rep(args.rep, profile)
    if rep.K != profile.K:
        raise UsageError(f"rep has K={rep.K}, profile has K={profile.K}")
    if args.identities:
        names = [x.strip() for x in args.identities.split(",") if x.strip()]
    else:
        if args.suite not in SUITES:
            raise UsageError(f"unknown suite {args.suite!r}")
        names = SUITES[args.suite]
    unknown = [x for x in names if x not in REGISTRY]
    if unknown:
        raise UsageError(f"unknown identities: {', '.join(unknown)}")
    reports = run_identities(profile, rep, names)
    payload = {"command": "verify", "profile": profile.to_json(), "rep": rep.name}
    return _finish(payload, reports, args)


def cmd_pbw(args) -> int:
    try:
        profile = make_profile(args.M, 2 * args.n)
    except ValueError as e:
        raise UsageError(str(e))
    if args.max_degree < 1:
        raise UsageError("max-degree must be at least 1")
    slices, reports = [], []
    counts = Report("PBW_COUNTS")
    for p in range(1, args.max_degree + 1):
        sl = pbw_mod.solve_constraint(profile, p)
        formula = pbw_mod.dimension_formula(profile, p % 2)
        entry = sl.to_json()
        entry["formula"] = formula
        slices.append(entry)
        if len(sl.generators) != formula:
            counts.fail([p], f"{len(sl.generators)} generators, formula {formula}")
        if not sl.accounts_for(profile.K):
            counts.fail([p], "slice does not account for every pair")
    total = pbw_mod.dimension_formula(profile, 0) + pbw_mod.dimension_formula(profile, 1)
    if total != profile.K ** 2:
        counts.fail("sum", f"{total} != K^2")
    reports.append(counts)
    corollary = []
    for p in range(1, args.max_degree + 1):
        r = pbw_mod.compare_corollary_lists(profile, p, args.reading)
        corollary.append(r.to_json())
    payload = {"command": "pbw", "profile": profile.to_json(), "slices": slices, "corollary": corollary}
    return _finish(payload, reports, args)


def cmd_cert(args) -> int:
    cert = _load_json(args.file)
    if not isinstance(cert, dict):
        raise UsageError("a certificate is a JSON object")
    if args.theorem:
        if cert.get("theorem") not in (None, args.theorem):
            raise UsageError(f"certificate is for {cert.get('theorem')!r}, not {args.theorem!r}")
        cert["theorem"] = args.theorem
    try:
        rep = run_certificate(cert, args.reading)
    except (ValueError, KeyError, TypeError) as e:
        raise UsageError(f"bad certificate: {e}")
    payload = {"command": "cert", "theorem": cert.get("theorem")}
    return _finish(payload, [rep], args)


def cmd_weights(args) -> int:
    profile = parse_profile(args.profile)
    try:
        if args.mu_file:
            mu = complete_mu(WeightVector.from_json(_load_json(args.mu_file)).entries, profile)
            lv = l_from_mu(mu)
            l = [lv[i] for i in profile.indices]
        elif args.l:
            l = [parse_scalar(x)(0) for x in args.l.split(",")]
        else:
            raise UsageError("give --l or --mu-file")
        if len(l) != profile.K:
            raise UsageError(f"need {profile.K} weights")
        gamma = parse_scalar(args.gamma)(0) if args.gamma else None
        rep = check_osp_weight_integrality(l, profile, gamma)
    except ValueError as e:
        raise UsageError(str(e))
    payload = {"command": "weights", "profile": profile.to_json(), "l": [str(x) for x in l]}
    return _finish(payload, [rep], args)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="superyang", description="Exact checks for twisted super Yangians.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--json", action="store_true", help="print the JSON report instead of a summary")

    v = sub.add_parser("verify", help="run identity checks on an evaluation module")
    v.add_argument("--profile", required=True, help="M,N")
    v.add_argument("--theta", help="comma separated signs overriding the canonical theta")
    v.add_argument("--rep", default="defining")
    v.add_argument("--rep-file", help="gl(M|N) module as JSON")
    v.add_argument("--suite", default="all")
    v.add_argument("--identities", help="comma separated registry names")
    common(v)
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("pbw", help="PBW generators per degree")
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--reading", choices=("literal", "reconciled"), default="literal")
    common(p)
    p.set_defaults(func=cmd_pbw)

    c = sub.add_parser("cert", help="check a highest-weight certificate")
    c.add_argument("--file", required=True)
    c.add_argument("--theorem")
    c.add_argument("--reading", choices=("corrected", "printed"), default="corrected")
    common(c)
    c.set_defaults(func=cmd_cert)

    w = sub.add_parser("weights", help="osp weight integrality constraints")
    w.add_argument("--profile", required=True, help="M,N with M even")
    w.add_argument("--l", help="comma separated weights l_1..l_K")
    w.add_argument("--mu-file", help="twisted weight JSON to read l from")
    w.add_argument("--gamma")
    common(w)
    w.set_defaults(func=cmd_weights)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
