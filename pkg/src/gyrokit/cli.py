"""Command-line entry point.

Exit codes: 0 when every check in the report holds, 1 when checks ran and
at least one failed, 2 for usage, parse or resource errors.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import einstein as ein
from .core import ALL_LABELS, coadd, coadd_alt, identity_suite
from .cosets import classify, coset_partition, enumerate_subgyrogroups, left_cosets
from .errors import GyroError, PreconditionUnmet
from .report import ReportDocument, emit_report
from .setcheck import (
    SCANS,
    check_coaddition_chain,
    check_coset_inversion,
    check_neutrality,
    check_product_chain,
    check_reassociation,
)
from .subsets import GyroSubset, format_subset, members, parse_subset
from .tables import VERIFY_LABELS, FiniteGyrogroup, read_table, resource_limit, verify_table

COMMANDS = ("verify", "subgyro", "cosets", "einstein", "setcheck")
SET_CHECKS = ("all", "reassociation", "coset-inversion", "neutrality", "product-chain", "coaddition-chain")
DEFAULT_SEED = 7
# verify also runs the exhaustive identity suite up to this many triples
SUITE_MAX_TRIPLES = 1 << 21


@dataclass
class RunConfig:
    command: str
    input_path: str | None = None
    subset: str | None = None
    sets: dict[str, str] = field(default_factory=dict)
    g: int | None = None
    check: str = "all"
    force: bool = False
    c: float = 1.0
    tol: float = 1e-9
    max_beta: float = 0.99
    samples: int = 10000
    seed: int = DEFAULT_SEED
    output_format: str = "human"
    resource_limit_n: int = field(default_factory=resource_limit)
    scan_limit: int = 4
    timing: bool = False

    def echo(self) -> dict:
        out: dict = {"name": self.command}
        if self.command == "einstein":
            out.update(c=self.c, tol=self.tol, max_beta=self.max_beta, samples=self.samples, seed=self.seed)
            return out
        out["input"] = self.input_path
        out["limit"] = self.resource_limit_n
        if self.subset is not None:
            out["subset"] = self.subset
        if self.command == "setcheck":
            out.update(check=self.check, force=self.force, scan_limit=self.scan_limit)
            out.update({k: v for k, v in sorted(self.sets.items())})
            if self.g is not None:
                out["g"] = self.g
        return out


class UsageError(GyroError):
    pass


def _load(cfg: RunConfig):
    if not cfg.input_path:
        raise UsageError(f"{cfg.command} needs --input PATH")
    n, A = read_table(cfg.input_path)
    return n, A


def _load_gyrogroup(cfg: RunConfig, doc: ReportDocument) -> FiniteGyrogroup | None:
    n, A = _load(cfg)
    verdict = verify_table(n, A, cfg.resource_limit_n)
    if not verdict.valid:
        for label, w in verdict.failures:
            doc.add(f"table.{label}", False, w)
        return None
    return verdict.gyrogroup


def _suite_witness(report, label):
    ws = report.witnesses_for(label)
    if not ws:
        return None
    w = ws[0]
    return {"inputs": w.inputs, "lhs": w.lhs, "rhs": w.rhs, "residual": w.residual}


def _run_verify(cfg: RunConfig, doc: ReportDocument) -> None:
    n, A = _load(cfg)
    verdict = verify_table(n, A, cfg.resource_limit_n)
    ran = list(VERIFY_LABELS)
    # a missing identity or inverse stops verification early
    for stop in ("axiom_identity", "axiom_inverse"):
        if verdict.witness(stop) is not None:
            ran = ran[: ran.index(stop) + 1]
            break
    for label in ran:
        w = verdict.witness(label)
        doc.add(label, w is None, w)
    doc.results["table"] = {"n": n, "valid": verdict.valid}
    G = verdict.gyrogroup
    if G is None:
        return
    doc.results["table"].update(identity=G.identity, is_group=G.is_group, distinct_gyrations=len(G.gyrations))
    if n**3 <= SUITE_MAX_TRIPLES:
        report = identity_suite(G, G.exhaustive_samples())
        for label in ALL_LABELS:
            doc.add(f"identity.{label}", report.results[label], _suite_witness(report, label))


def _info_dict(info) -> dict:
    return {
        "elements": info.elements,
        "is_subgyrogroup": info.is_subgyrogroup,
        "is_L": info.is_L,
        "is_strong": info.is_strong,
        "witnesses": info.witnesses,
    }


def _run_subgyro(cfg: RunConfig, doc: ReportDocument) -> None:
    G = _load_gyrogroup(cfg, doc)
    if G is None:
        return
    if cfg.subset is not None:
        info = classify(G, _nonempty(cfg.subset, G.n))
        doc.add("is_subgyrogroup", info.is_subgyrogroup, info.witnesses.get("is_subgyrogroup"))
        doc.results["classification"] = _info_dict(info)
        return
    infos = enumerate_subgyrogroups(G, cfg.resource_limit_n)
    strong_not_l = [i.elements for i in infos if i.is_strong and not i.is_L]
    doc.add("strong_implies_L", not strong_not_l, strong_not_l[0] if strong_not_l else None)
    l_not_sub = [i.elements for i in infos if i.is_L and not i.is_subgyrogroup]
    doc.add("L_implies_subgyrogroup", not l_not_sub, l_not_sub[0] if l_not_sub else None)
    no_id = [i.elements for i in infos if not (i.bits >> G.identity) & 1]
    doc.add("identity_in_every_subgyrogroup", not no_id, no_id[0] if no_id else None)
    doc.results["subgyrogroups"] = [
        f"{format_subset(i.bits)}  L={'yes' if i.is_L else 'no'} strong={'yes' if i.is_strong else 'no'}"
        for i in infos
    ]
    doc.results["count"] = {"subgyrogroups": len(infos), "L": sum(bool(i.is_L) for i in infos),
                            "strong": sum(bool(i.is_strong) for i in infos)}


def _nonempty(text: str, n: int) -> int:
    mask = parse_subset(text, n)
    if not mask:
        raise UsageError("subset literal is empty")
    return mask


def _run_cosets(cfg: RunConfig, doc: ReportDocument) -> None:
    G = _load_gyrogroup(cfg, doc)
    if G is None:
        return
    if cfg.subset is None:
        raise UsageError("cosets needs --subset")
    mask = _nonempty(cfg.subset, G.n)
    info = classify(G, mask)
    doc.add("is_subgyrogroup", info.is_subgyrogroup, info.witnesses.get("is_subgyrogroup"))
    if not info.is_subgyrogroup:
        return
    doc.add("is_L", info.is_L, info.witnesses.get("is_L"))
    if not info.is_L:
        fam = left_cosets(G, mask)
        doc.add("cosets_disjoint", fam.is_partition, fam.overlaps[0] if fam.overlaps else None)
        doc.results["cosets"] = [members(fam.cosets[a]) for a in range(G.n)]
        return
    part = coset_partition(G, mask)
    doc.add("partition", True)
    doc.results["blocks"] = part.block_members()
    doc.results["quotient_map"] = list(part.index_of)
    doc.results["index"] = {"blocks": len(part), "subgroup_order": len(info), "order": G.n}


def _collinear_check(cfg: RunConfig):
    grid = np.round(np.arange(1, 10) / 10, 1)
    worst = 0.0
    where = None
    for b1 in grid:
        for b2 in grid:
            got = ein.add_velocities([b1 * cfg.c, 0, 0], [b2 * cfg.c, 0, 0], cfg.c)
            want = (b1 + b2) / (1 + b1 * b2) * cfg.c
            err = max(abs(got[0] - want) / abs(want), abs(got[1]), abs(got[2]))
            if err > worst:
                worst, where = float(err), [float(b1), float(b2)]
    return worst, where


def _run_einstein(cfg: RunConfig, doc: ReportDocument) -> None:
    ecfg = ein.EinsteinConfig(c=cfg.c, tol=cfg.tol, max_beta=cfg.max_beta, seed=cfg.seed)
    if cfg.samples < 1:
        raise UsageError("--samples must be positive")
    reports = ein.compare_variants(ecfg, cfg.samples)
    std, mis = reports[ein.STANDARD], reports[ein.MISPRINTED]
    for label in ALL_LABELS:
        doc.add(f"standard.{label}", std.results[label], _suite_witness(std, label),
                max_residual=std.max_residual[label])

    rejected = not (mis.results["axiom_inverse"] and mis.results["left_cancellation"])
    doc.add(
        "misprinted_variant_rejected",
        rejected,
        None if rejected else "misprinted variant passed the inverse and left-cancellation checks",
        failed=mis.failed,
        left_cancellation_witness=_suite_witness(mis, "left_cancellation"),
    )

    G = ein.einstein_interface(ecfg)
    a, b, _, _ = ein.sample_tuples(ecfg, cfg.samples)
    res = G.residual(coadd(G, a, b), coadd_alt(G, a, b))
    worst = int(np.argmax(res))
    ok = bool(res[worst] <= cfg.tol)
    doc.add("coaddition_forms_agree", ok, None if ok else {"a": a[worst], "b": b[worst]},
            max_residual=float(res[worst]))

    err, where = _collinear_check(cfg)
    doc.add("collinear_oracle", err <= 1e-12, None if err <= 1e-12 else where, max_relative_error=err)

    doc.results["config"] = {"c": ecfg.c, "tol": ecfg.tol, "max_beta": ecfg.max_beta,
                             "seed": ecfg.seed, "samples": cfg.samples}
    doc.results["standard_max_residual"] = std.max_residual
    doc.results["misprinted_max_residual"] = mis.max_residual


SET_REQUIREMENTS = {
    "reassociation": ("W", "U", "V"),
    "coset-inversion": ("H", "V"),
    "neutrality": ("H", "U"),
    "product-chain": ("W", "U", "H"),
    "coaddition-chain": ("W", "U", "V", "H"),
}


def _verdict_detail(v) -> dict:
    return {"step": v.step, "steps": [list(s) for s in v.steps]}


def _run_setcheck(cfg: RunConfig, doc: ReportDocument) -> None:
    G = _load_gyrogroup(cfg, doc)
    if G is None:
        return
    if not cfg.sets and cfg.g is None:
        names = list(SCANS) if cfg.check == "all" else [cfg.check.replace("-", "_")]
        if names == ["neutrality"]:
            raise UsageError("neutrality has no exhaustive scan; pass --H and --U")
        for name in names:
            res = SCANS[name](G, cfg.scan_limit)
            doc.add(f"scan.{name}", res.holds, res.violations[0] if res.violations else None,
                    instances=res.instances, violations=len(res.violations))
        return
    if cfg.check == "all":
        raise UsageError("pick one --check when passing subsets")

    need = SET_REQUIREMENTS[cfg.check]
    missing = [k for k in need if k not in cfg.sets]
    if missing:
        raise UsageError(f"{cfg.check} needs " + ", ".join(f"--{k}" for k in missing))
    S = {k: GyroSubset(parse_subset(v, G.n), G) for k, v in cfg.sets.items()}
    name = cfg.check
    if name == "reassociation":
        v = check_reassociation(S["W"], S["U"], S["V"], force=cfg.force)
        doc.add(name, v.holds, v.witness, **_verdict_detail(v))
    elif name == "coset-inversion":
        W, v = check_coset_inversion(S["H"], S["V"], S.get("W"))
        doc.add(name, v.holds, v.witness, W=W.elements)
    elif name == "neutrality":
        V, inner, outer = check_neutrality(S["H"], S["U"], S.get("V"))
        doc.add("inner_neutral", inner.holds, inner.witness, V=V.elements)
        doc.add("outer_neutral", outer.holds, outer.witness, V=V.elements)
    elif name == "product-chain":
        v = check_product_chain(S["W"], S["U"], S["H"])
        doc.add(name, v.holds, v.witness, **_verdict_detail(v))
    elif name == "coaddition-chain":
        if cfg.g is None:
            raise UsageError("coaddition-chain needs --g")
        v = check_coaddition_chain(S["W"], S["U"], S["V"], S["H"], cfg.g)
        doc.add(name, v.holds, v.witness, **_verdict_detail(v))


RUNNERS = {
    "verify": _run_verify,
    "subgyro": _run_subgyro,
    "cosets": _run_cosets,
    "einstein": _run_einstein,
    "setcheck": _run_setcheck,
}


def run(cfg: RunConfig, stderr=None) -> tuple[int, ReportDocument | None]:
    """Dispatch one command; errors become exit code 2 with a message on ``stderr``."""
    stderr = sys.stderr if stderr is None else stderr
    doc = ReportDocument(command=cfg.echo())
    start = time.perf_counter()
    try:
        RUNNERS[cfg.command](cfg, doc)
    except (GyroError, ValueError, OSError) as exc:
        kind = "precondition" if isinstance(exc, PreconditionUnmet) else "error"
        print(f"gyrokit {cfg.command}: {kind}: {exc}", file=stderr)
        return 2, None
    if cfg.timing:
        doc.timing_ms = (time.perf_counter() - start) * 1000.0
    return (0 if doc.all_passed else 1), doc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("human", "structured"), default="human")
    common.add_argument("--limit", dest="resource_limit_n", type=int, default=None,
                        help="largest carrier size accepted (default $GYROKIT_LIMIT or 4096)")
    common.add_argument("--timing", action="store_true", help="add wall-clock time to the report")

    table = argparse.ArgumentParser(add_help=False)
    table.add_argument("--input", dest="input_path", required=True, metavar="PATH")

    p = argparse.ArgumentParser(prog="gyrokit", description="Gyrogroup verification toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("verify", parents=[common, table], help="check a Cayley table against the gyrogroup axioms")

    s = sub.add_parser("subgyro", parents=[common, table], help="enumerate or classify subgyrogroups")
    s.add_argument("--subset", help='subset literal, e.g. "0,2"')

    s = sub.add_parser("cosets", parents=[common, table], help="left coset partition G/H")
    s.add_argument("--subset", required=True, help='subgyrogroup literal, e.g. "0,2"')

    s = sub.add_parser("einstein", parents=[common], help="identity suite on the Einstein gyrogroup")
    s.add_argument("--c", type=float, default=1.0)
    s.add_argument("--tol", type=float, default=1e-9)
    s.add_argument("--max-beta", dest="max_beta", type=float, default=0.99)
    s.add_argument("--samples", type=int, default=10000)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)

    s = sub.add_parser("setcheck", parents=[common, table], help="subset identities and inclusion chains")
    s.add_argument("--check", choices=SET_CHECKS, default="all")
    for name in ("W", "U", "V", "H"):
        s.add_argument(f"--{name}", dest=f"set_{name}", metavar="SUBSET")
    s.add_argument("--g", type=int, help="element for coaddition-chain")
    s.add_argument("--force", action="store_true", help="skip the gyr-invariance precondition of reassociation")
    s.add_argument("--scan-limit", type=int, default=4, help="largest n for exhaustive scans")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command, output_format=ns.output_format, timing=ns.timing)
    if ns.resource_limit_n is not None:
        cfg.resource_limit_n = ns.resource_limit_n
    for key in ("input_path", "subset", "c", "tol", "max_beta", "samples", "seed", "check", "g", "force", "scan_limit"):
        if hasattr(ns, key):
            setattr(cfg, key, getattr(ns, key))
    cfg.sets = {k: getattr(ns, f"set_{k}") for k in "WUVH" if getattr(ns, f"set_{k}", None) is not None}
    return cfg


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    code, doc = run(cfg)
    if doc is not None:
        sys.stdout.write(emit_report(doc, cfg.output_format))
    return code


if __name__ == "__main__":
    sys.exit(main())
