"""Search orchestration over monomial exponent space, with caching.

Candidates are enumerated once per cyclotomic coset (the orbit of an
exponent under multiplication by p modulo p**n - 1); every member of a
coset gives the same verdict, so the smallest member is the search key.
Weight-p cosets are decided by the two algebraic deciders cross-checked
against each other; all other cosets go to brute force, which uses the
single-direction monomial reduction once fast_path_validated has vetted
it for the characteristic and a full early-exit spectrum before that.

Default filters drop cosets that cannot be GAPN: digit sum below p
(any characteristic), and even digit sum (odd characteristic only, where
x -> -x pairs up solutions).  verify_filters re-checks a stratified
sample of everything filtered by brute force.

Cache files hold one CSV record per decided coset:

    p,n,coset_rep,weight,verdict,decider,version,checksum

with verdict 0/1, deciders joined by '+', and checksum the decimal CRC-32
of the preceding text.  Any mismatch raises CacheCorrupt rather than
silently recomputing.
"""

from __future__ import annotations

import math
import multiprocessing
import time
import zlib
from dataclasses import dataclass, field
from pathlib import Path

from .errors import CacheCorrupt, DeciderDisagreement
from .fields import FieldCtx, make_field
from .gapn import (
    GapnReport,
    differential_spectrum,
    linearized_kernel_dim,
    monomial_gapn_fast,
    monomial_table,
)
from .monomial import (
    circulant_rank,
    coset_members,
    coset_rep,
    criterion_gapn,
    max_degree_family,
    normalize_weight_p,
    p_weight,
    welch_exponent,
)

SOFT_ORDER_BUDGET = 3**7

_FAST_VALIDATION_CAP = 3**5

_fast_path_ok: dict[int, bool] = {}


def fast_path_validated(p: int) -> bool:
    """Vet the single-direction monomial reduction for characteristic p.

    Every exponent of every field F_(p^m) with p**m <= 243 is decided both
    by monomial_gapn_fast and by a full brute-force spectrum; the fast path
    is trusted only if all verdicts agree.  The outcome is memoized per
    characteristic for the life of the process.
    """
    ok = _fast_path_ok.get(p)
    if ok is None:
        ok = True
        m = 1
        while p**m <= _FAST_VALIDATION_CAP and ok:
            ctx = make_field(p, m)
            for d in range(1, p**m):
                fast = monomial_gapn_fast(ctx, d)
                full = differential_spectrum(monomial_table(ctx, d), mode="verdict")
                if fast.is_gapn != full.is_gapn:
                    ok = False
                    break
            m += 1
        _fast_path_ok[p] = ok
    return ok


def _decide_weight_p(p: int, n: int, rep: int) -> tuple[bool, list[str]]:
    d = normalize_weight_p(rep, p)
    by_criterion = criterion_gapn(d, p, n).is_gapn
    by_rank = circulant_rank(d, p, n) == n - 1
    if by_criterion != by_rank:
        raise DeciderDisagreement(
            f"criterion and circulant rank disagree on d={d}, p={p}, n={n}"
        )
    return by_criterion, ["criterion", "circulant-rank"]


def _decide_brute(ctx: FieldCtx, d: int, fast_ok: bool) -> tuple[bool, list[str]]:
    if fast_ok:
        return monomial_gapn_fast(ctx, d).is_gapn, ["monomial-fast"]
    report = differential_spectrum(monomial_table(ctx, d), mode="verdict")
    return report.is_gapn, ["brute-force"]


_worker_state: dict = {}


def _init_worker(p: int, n: int, mod_coeffs: tuple[int, ...], fast_ok: bool) -> None:
    from .polyfp import PolyFp

    _worker_state["ctx"] = make_field(p, n, PolyFp(p, mod_coeffs))
    _worker_state["fast_ok"] = fast_ok


def _decide_candidate(args: tuple[int, int, bool]):
    rep, weight, algebraic = args
    ctx: FieldCtx = _worker_state["ctx"]
    if algebraic:
        verdict, deciders = _decide_weight_p(ctx.p, ctx.n, rep)
    else:
        verdict, deciders = _decide_brute(ctx, rep, _worker_state["fast_ok"])
    return rep, weight, verdict, deciders


@dataclass
class SearchFilters:
    skip_even_weight: bool = True
    skip_low_weight: bool = True
    verify_filters: bool = False


@dataclass
class SearchJob:
    p: int
    n: int
    mode: str = "exhaustive"
    filters: SearchFilters = field(default_factory=SearchFilters)
    jobs: int = 1
    cache_dir: str | None = None


_MODES = ("exhaustive", "weight-p-only", "families-only", "conjecture")


@dataclass
class SearchResult:
    p: int
    n: int
    mode: str
    gapn_cosets: list[dict]
    scanned: int
    filtered: dict[str, int]
    elapsed: float
    conjecture_holds: bool | None = None
    filter_check: dict | None = None

    def to_dict(self) -> dict:
        from . import __version__

        return {
            "p": self.p,
            "n": self.n,
            "mode": self.mode,
            "gapn_cosets": self.gapn_cosets,
            "scanned": self.scanned,
            "filtered": dict(self.filtered),
            "conjecture_holds": self.conjecture_holds,
            "filter_check": self.filter_check,
            "elapsed": self.elapsed,
            "version": __version__,
        }


def run_search(job: SearchJob) -> SearchResult:
    """Scan the coset space of F_(p^n) per the job and report GAPN cosets.

    Output is deterministic for a given job and cache state regardless of
    worker count: entries are keyed and sorted by coset representative.
    """
    if job.mode not in _MODES:
        raise ValueError(f"unknown search mode {job.mode!r}")
    t0 = time.perf_counter()
    if job.mode == "families-only":
        return _run_families_only(job, t0)
    p, n = job.p, job.n
    ctx = make_field(p, n)
    order = ctx.order
    max_weight = n * (p - 1) - 1
    skip_even = job.filters.skip_even_weight and p % 2 == 1
    scanned = 0
    filtered = {"low_weight": 0, "even_weight": 0, "out_of_band": 0}
    filtered_reps: dict[str, list[int]] = {"low_weight": [], "even_weight": []}
    candidates: list[tuple[int, int, bool]] = []
    for d in range(2, order - 1):
        if coset_rep(d, p, n) != d:
            continue
        scanned += 1
        w = p_weight(d, p)
        if job.mode == "conjecture" and not (p < w < max_weight):
            filtered["out_of_band"] += 1
            continue
        if job.mode == "weight-p-only" and w != p:
            filtered["out_of_band"] += 1
            continue
        if job.filters.skip_low_weight and w < p:
            filtered["low_weight"] += 1
            filtered_reps["low_weight"].append(d)
            continue
        if skip_even and w % 2 == 0:
            filtered["even_weight"] += 1
            filtered_reps["even_weight"].append(d)
            continue
        candidates.append((d, w, w == p))

    cached: dict[int, tuple[int, bool, list[str]]] = {}
    if job.cache_dir is not None:
        cached = _load_cache(job.cache_dir, p, n)
    todo = [c for c in candidates if c[0] not in cached]

    fast_ok = False
    if any(not algebraic for _, _, algebraic in todo) or job.filters.verify_filters:
        fast_ok = fast_path_validated(p)

    results: dict[int, tuple[int, bool, list[str]]] = {}
    if job.jobs > 1 and len(todo) > 1:
        chunk = max(1, len(todo) // (job.jobs * 4))
        with multiprocessing.Pool(
            job.jobs,
            initializer=_init_worker,
            initargs=(p, n, ctx.modulus.coeffs, fast_ok),
        ) as pool:
            for rep, w, verdict, deciders in pool.imap_unordered(
                _decide_candidate, todo, chunksize=chunk
            ):
                results[rep] = (w, verdict, deciders)
    else:
        for rep, w, algebraic in todo:
            if algebraic:
                verdict, deciders = _decide_weight_p(p, n, rep)
            else:
                verdict, deciders = _decide_brute(ctx, rep, fast_ok)
            results[rep] = (w, verdict, deciders)

    if job.cache_dir is not None:
        for rep in sorted(results):
            w, verdict, deciders = results[rep]
            cache_store(job.cache_dir, (p, n, rep), w, verdict, deciders)
        results.update(cached)
    else:
        results.update(cached)

    gapn_cosets = []
    for rep in sorted(results):
        w, verdict, deciders = results[rep]
        if verdict:
            gapn_cosets.append(
                {
                    "d": rep,
                    "members": list(coset_members(rep, p, n)),
                    "weight": w,
                    "deciders": list(deciders),
                }
            )

    filter_check = None
    if job.filters.verify_filters:
        filter_check = _verify_filtered(ctx, filtered_reps, fast_ok)

    conjecture_holds = None
    if job.mode == "conjecture":
        conjecture_holds = not gapn_cosets

    return SearchResult(
        p=p,
        n=n,
        mode=job.mode,
        gapn_cosets=gapn_cosets,
        scanned=scanned,
        filtered=filtered,
        elapsed=round(time.perf_counter() - t0, 6),
        conjecture_holds=conjecture_holds,
        filter_check=filter_check,
    )


def _verify_filtered(ctx: FieldCtx, filtered_reps: dict[str, list[int]], fast_ok: bool) -> dict:
    """Brute-force a stratified sample of filtered cosets; all must be
    non-GAPN for the filters to be sound."""
    sampled = 0
    violations = []
    per_stratum = {}
    for stratum, reps in filtered_reps.items():
        if not reps:
            per_stratum[stratum] = 0
            continue
        if len(reps) <= 100:
            sample = reps
        else:
            step = len(reps) / 100.0
            sample = sorted({reps[int(i * step)] for i in range(100)})
        per_stratum[stratum] = len(sample)
        sampled += len(sample)
        for d in sample:
            verdict, _ = _decide_brute(ctx, d, fast_ok)
            if verdict:
                violations.append(d)
    return {"sampled": sampled, "per_stratum": per_stratum, "violations": violations}


def _gather_verdicts(
    ctx: FieldCtx, d: int, want_report: bool, long_running: bool = False
) -> tuple[GapnReport | None, dict[str, bool]]:
    """Run every decider that applies to (ctx, d); outcomes must agree."""
    p, n = ctx.p, ctx.n
    verdicts: dict[str, bool] = {}
    report = None
    full_ok = ctx.order <= SOFT_ORDER_BUDGET or long_running
    if full_ok:
        report = differential_spectrum(
            monomial_table(ctx, d), mode="full" if want_report else "verdict"
        )
        verdicts["brute-force"] = report.is_gapn
    if fast_path_validated(p):
        fast = monomial_gapn_fast(ctx, d)
        verdicts["monomial-fast"] = fast.is_gapn
        if report is None or (want_report and report.partial):
            report = fast
    if p_weight(d, p) == p:
        dn = normalize_weight_p(d, p)
        verdicts["criterion"] = criterion_gapn(dn, p, n).is_gapn
        verdicts["circulant-rank"] = circulant_rank(dn, p, n) == n - 1
        verdicts["linearized-kernel"] = linearized_kernel_dim(ctx, dn) == 1
    if len(set(verdicts.values())) != 1:
        raise DeciderDisagreement(f"deciders disagree on d={d}, p={p}, n={n}: {verdicts}")
    if report is not None:
        report.deciders_agreed = sorted(verdicts)
    return report, verdicts


def analyze_exponent(ctx: FieldCtx, d: int, long_running: bool = False) -> GapnReport:
    """Full report for one exponent with every applicable decider agreeing.

    Above the soft order budget the full spectrum is skipped unless opted
    in; the report is then the extrapolated single-direction one.
    """
    report, _ = _gather_verdicts(ctx, d, want_report=True, long_running=long_running)
    assert report is not None
    return report


def exact_verdict(ctx: FieldCtx, d: int) -> tuple[bool, list[str]]:
    """Verdict for one exponent by all applicable deciders (must agree)."""
    _, verdicts = _gather_verdicts(ctx, d, want_report=False)
    return next(iter(verdicts.values())), sorted(verdicts)


@dataclass
class FamilyEntry:
    family: str
    param: int
    d: int
    predicted: bool
    verdict: bool
    deciders: list[str]

    @property
    def agree(self) -> bool:
        return self.predicted == self.verdict

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "param": self.param,
            "d": self.d,
            "predicted": self.predicted,
            "verdict": self.verdict,
            "deciders": list(self.deciders),
            "agree": self.agree,
        }


@dataclass
class FamilyReport:
    p: int
    n: int
    entries: list[FamilyEntry]

    @property
    def mismatches(self) -> int:
        return sum(not e.agree for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "entries": [e.to_dict() for e in self.entries],
            "mismatches": self.mismatches,
        }


def verify_families(p: int, n: int, ctx: FieldCtx | None = None) -> FamilyReport:
    """Check every classical family exponent against an exact decider.

    Families: p**i + p - 1 for i = 1..n-1 (predicted GAPN iff gcd(i, n) = 1),
    the p**t + p + 1 exponent with its characteristic rule, and for odd p
    the maximal-degree family p**n - p**j - 1 (predicted GAPN throughout).
    """
    if ctx is None:
        ctx = make_field(p, n)
    entries: list[FamilyEntry] = []
    for i in range(1, n):
        d = p**i + p - 1
        verdict, deciders = exact_verdict(ctx, d)
        entries.append(
            FamilyEntry("gold", i, d, math.gcd(i, n) == 1, verdict, deciders)
        )
    if n >= 2:
        d, predicted = welch_exponent(p, n)
        t = (n - 1) // 2 if n % 2 else n // 2
        verdict, deciders = exact_verdict(ctx, d)
        entries.append(FamilyEntry("welch", t, d, predicted, verdict, deciders))
    if p % 2 == 1:
        for j, d in enumerate(max_degree_family(p, n)):
            verdict, deciders = exact_verdict(ctx, d)
            entries.append(FamilyEntry("max-degree", j, d, True, verdict, deciders))
    return FamilyReport(p, n, entries)


def _run_families_only(job: SearchJob, t0: float) -> SearchResult:
    report = verify_families(job.p, job.n)
    gapn_cosets = []
    seen = set()
    for entry in report.entries:
        if not entry.verdict:
            continue
        rep = coset_rep(entry.d, job.p, job.n)
        if rep in seen:
            continue
        seen.add(rep)
        gapn_cosets.append(
            {
                "d": rep,
                "members": list(coset_members(rep, job.p, job.n)),
                "weight": p_weight(rep, job.p),
                "deciders": list(entry.deciders),
            }
        )
    gapn_cosets.sort(key=lambda e: e["d"])
    return SearchResult(
        p=job.p,
        n=job.n,
        mode=job.mode,
        gapn_cosets=gapn_cosets,
        scanned=len(report.entries),
        filtered={"low_weight": 0, "even_weight": 0, "out_of_band": 0},
        elapsed=round(time.perf_counter() - t0, 6),
    )


# ---- cache -----------------------------------------------------------------


def _cache_path(cache_dir, p: int, n: int) -> Path:
    return Path(cache_dir) / f"gapn_{p}_{n}.csv"


def cache_store(
    cache_dir, key: tuple[int, int, int], weight: int, verdict: bool, deciders: list[str]
) -> None:
    """Append one decided coset to the cache (append-only)."""
    from . import __version__

    p, n, rep = key
    prefix = f"{p},{n},{rep},{weight},{int(verdict)},{'+'.join(deciders)},{__version__}"
    crc = zlib.crc32(prefix.encode("utf-8"))
    path = _cache_path(cache_dir, p, n)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "a") as fh:
        fh.write(f"{prefix},{crc}\n")


def cache_lookup(cache_dir, key: tuple[int, int, int]):
    """(weight, verdict, deciders) for a cached coset, or None on a miss."""
    p, n, rep = key
    return _load_cache(cache_dir, p, n).get(rep)


def _load_cache(cache_dir, p: int, n: int) -> dict[int, tuple[int, bool, list[str]]]:
    path = _cache_path(cache_dir, p, n)
    out: dict[int, tuple[int, bool, list[str]]] = {}
    if not path.exists():
        return out
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 8:
                raise CacheCorrupt(f"{path}:{lineno}: malformed record")
            prefix = ",".join(parts[:7])
            if str(zlib.crc32(prefix.encode("utf-8"))) != parts[7]:
                raise CacheCorrupt(f"{path}:{lineno}: checksum mismatch")
            rec_p, rec_n, rep, weight, verdict = (int(x) for x in parts[:5])
            if (rec_p, rec_n) != (p, n):
                raise CacheCorrupt(f"{path}:{lineno}: record for ({rec_p},{rec_n}) in ({p},{n}) cache")
            out[rep] = (weight, bool(verdict), parts[5].split("+"))
    return out


__all__ = [
    "FamilyEntry",
    "FamilyReport",
    "SearchFilters",
    "SearchJob",
    "SearchResult",
    "SOFT_ORDER_BUDGET",
    "analyze_exponent",
    "cache_lookup",
    "cache_store",
    "exact_verdict",
    "fast_path_validated",
    "run_search",
    "verify_families",
]
