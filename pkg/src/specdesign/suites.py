"""Named verification suites: each checks one classification or construction and
returns a JSON-ready report of individual assertions."""
from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

from . import designs as D
from . import enumeration as E
from . import spectral as S
from .graphs import family, family_label, graph_isomorphic


def worker_count() -> int:
    env = os.environ.get("SPECDESIGN_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"SPECDESIGN_THREADS must be an integer, got {env!r}")
    return os.cpu_count() or 1


def parallel_map(fn, items) -> list:
    """map() over worker processes; results keep the input order."""
    items = list(items)
    workers = min(worker_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass
class Assertion:
    name: str
    ok: bool
    detail: object = None


@dataclass
class Report:
    suite: str
    assertions: list = field(default_factory=list)

    def check(self, name: str, ok: bool, detail=None):
        self.assertions.append(Assertion(name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(a.ok for a in self.assertions)

    def first_failure(self) -> Assertion | None:
        return next((a for a in self.assertions if not a.ok), None)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "ok": self.ok,
                "assertions": [asdict(a) for a in self.assertions]}


# --- designs ------------------------------------------------------------

def listed_bibd_families(excess: int, v: int) -> set:
    """The (b,v,r,k,λ) tuples the classification lists for a given v."""
    if excess == 1:
        return {(v, v, 1, 1, 0), (v, v, v - 1, v - 1, v - 2)}
    out = {(2 * v, v, 2, 1, 0)}
    fixed = {(6, 4, 3, 2, 1), (6, 3, 4, 2, 2), (7, 7, 3, 3, 1), (7, 7, 4, 4, 2)}
    return out | {t for t in fixed if t[1] == v}


def suite_lemma_bibd(vmax: int = 100) -> Report:
    rep = Report("lemma-bibd")
    for excess in (1, 2):
        found = [p.astuple() for p in E.scan_bibd_params(excess, vmax)]
        listed = set().union(*(listed_bibd_families(excess, v) for v in range(2, vmax + 1)))
        # (v,v,1,1,0) needs k ≤ v-1; both excess-1 families coincide at v = 2
        listed = {t for t in listed if t[3] <= t[1] - 1}
        extra = sorted(set(found) - listed)
        missing = sorted(listed - set(found))
        rep.check(f"r = λ+{excess}: scan finds every listed family", not missing,
                  {"missing": missing[:10]} if missing else None)
        rep.check(f"r = λ+{excess}: scan finds nothing beyond the listed families",
                  not extra, {"unlisted": extra[:10], "count": len(extra)} if extra else None)
    try:
        D.BibdParams(6, 3, 3, 2, 2)
        literal_ok = True
    except D.ParameterError:
        literal_ok = False
    rep.check("BIBD(6,3,3,2,2) violates vr = bk", not literal_ok)
    return rep


def _k_lambda_1_constructions(v: int) -> list:
    """(v-1,1,0)- and (v-1,v-2,v-3)-designs with an isolated or a full point."""
    singles = D.Design(v - 1, [[i] for i in range(v - 1)])
    bases = [singles] + ([D.complement_design(singles)] if v >= 3 else [])
    out = []
    for base in bases:
        out.append(D.add_point(base, []))
        out.append(D.add_point(base, range(base.b)))
    return out


def _k_lambda_2_listed() -> list:
    fano = D.fano()
    return ([D.named_pseudo(n) for n in ("D1", "D2", "D3", "D4")]
            + [D.remove_block(fano, 0), D.remove_block(D.complement_design(fano), 0)])


def suite_thm_pseudo(vmax: int = E.MAX_PSEUDO_V, seed: int = 0) -> Report:
    rep = Report("thm-pseudo")
    fano = D.fano()
    c842 = E.enumerate_pseudo(D.PseudoParams(8, 4, 2))
    rep.check("(8,4,2) has 4 classes", len(c842) == 4, len(c842))
    named = [D.named_pseudo(n) for n in ("D1", "D2", "D3", "D4")]
    table = [[E.design_isomorphic(c, d) for d in named] for c in c842]
    perfect = (len(c842) == 4 and all(sum(r) == 1 for r in table)
               and all(sum(col) == 1 for col in zip(*table)))
    rep.check("(8,4,2) classes match D1..D4 one-to-one", perfect)
    rng = random.Random(seed)
    relabelled = []
    for d in named:
        perm = list(range(8))
        rng.shuffle(perm)
        relabelled.append(d.relabel(perm))
    rep.check("D1..D4 matching survives random relabelling",
              all(E.design_isomorphic(a, b) for a, b in zip(named, relabelled)))
    c731 = E.enumerate_pseudo(D.PseudoParams(7, 3, 1))
    rep.check("(7,3,1) has 1 class: Fano minus a block",
              len(c731) == 1 and E.design_isomorphic(c731[0], D.remove_block(fano, 0)), len(c731))
    c742 = E.enumerate_pseudo(D.PseudoParams(7, 4, 2))
    rep.check("(7,4,2) has 1 class: (7,4,2)-design minus a block",
              len(c742) == 1 and E.design_isomorphic(
                  c742[0], D.remove_block(D.complement_design(fano), 0)), len(c742))
    c421 = E.enumerate_pseudo(D.PseudoParams(4, 2, 1))
    rep.check("(4,2,1) has 2 classes", len(c421) == 2, len(c421))

    bad1, bad2 = [], []
    listed2 = _k_lambda_2_listed()
    for v in range(2, vmax + 1):
        for k in range(1, v):
            cons = _k_lambda_1_constructions(v)
            for d in E.enumerate_pseudo(D.PseudoParams(v, k, k - 1)):
                if not any(E.design_isomorphic(d, c) for c in cons):
                    bad1.append([v, k, k - 1])
            if k >= 2:
                for d in E.enumerate_pseudo(D.PseudoParams(v, k, k - 2)):
                    if not any(E.design_isomorphic(d, c) for c in listed2):
                        blocks = [[p + 1 for p in b] for b in d.blocks]
                        bad2.append({"params": [v, k, k - 2], "blocks": blocks})
    rep.check(f"k = λ+1, v ≤ {vmax}: every class is a listed extension", not bad1, bad1 or None)
    rep.check(f"k = λ+2, v ≤ {vmax}: every class is D1..D4 or a block-deleted design",
              not bad2, bad2 or None)
    return rep


def suite_conjecture(vmax: int = E.MAX_PSEUDO_V) -> Report:
    rep = Report("conjecture")
    audit = E.audit_conjecture(vmax)
    bad = E.audit_counterexamples(audit)
    rep.check(f"every primary class with k-λ ≤ 2, v ≤ {vmax} meets a completion condition",
              not bad, bad or None)
    conds = {tuple(e["params"]): e["conditions"] for e in audit}
    if vmax >= 7:
        rep.check("(7,3,1) conditions are {iii}", conds.get((7, 3, 1)) == ["iii"], conds.get((7, 3, 1)))
        rep.check("(7,4,2) conditions are {iii, iv}", conds.get((7, 4, 2)) == ["iii", "iv"],
                  conds.get((7, 4, 2)))
    for d, par in ((D.remove_block(D.fano(), 0), (7, 3, 1)),
                   (D.remove_block(D.complement_design(D.fano()), 0), (7, 4, 2))):
        sp = D.split_primary(d)
        rep.check(f"split of pseudo {par}", sp.y == 2 and D.is_bibd(sp.M, D.BibdParams(*sp.M_params))
                  and D.is_bibd(sp.N, D.BibdParams(*sp.N_params)),
                  {"M": list(sp.M_params), "N": list(sp.N_params), "y": sp.y})
    return rep


# --- spectra --------------------------------------------------------------

def suite_lemma_spec(kmax: int = 12) -> Report:
    rep = Report("lemma-spec")
    count, wrong = 0, []
    for name in ("S", "L", "H", "R", "Q"):
        for k in range(2 if name in "SLH" else 3, kmax + 1):
            count += 1
            if not S.matches_pattern(family(name, k), S.expected_spectrum(name, k)):
                wrong.append({"graph": family_label(name, k),
                              "char_poly": str(S.char_poly_of(family(name, k)))})
    rep.check(f"{count} family identities for k ≤ {kmax}", not wrong, wrong or None)
    for name in ("G1", "G2", "G3", "G4"):
        rep.check(f"{name} spectrum", S.matches_pattern(family(name), S.expected_spectrum(name)))
    return rep


def _bounded_replay(rep: Report, nmax: int, a2: int, nmin: int):
    """Classify every connected graph of order ≤ nmax; the classification leaves no
    room for a graph that passes the half-spectrum test but matches nothing."""
    found = []
    for n in range(nmin, nmax + 1):
        for g in E.all_graphs(n):
            if not g.is_connected():
                continue
            if S.contains_half_spectrum(g, a2, n % 2 == 1):
                found.append((n, S.classify(g)))
    bad = [f for f in found if f[1] == "counterexample-candidate"]
    rep.check(f"all connected graphs of order {nmin}..{nmax}: no unlisted graph passes the test",
              not bad, {"passing": [list(f) for f in found]})


def suite_thm_ln(nmax: int = 30, exhaustive: int = 7) -> Report:
    rep = Report("thm-Ln")
    for n in range(6, nmax + 1, 2):
        for label, g in S.ones_candidates(n):
            ok = S.contains_half_spectrum(g, 1, False) and S.classify(g) == label
            rep.check(f"{label} (order {n}) passes and classifies", ok)
    _bounded_replay(rep, exhaustive, 1, 4)
    return rep


def suite_thm_sn(nmax: int = 31, exhaustive: int = 7) -> Report:
    rep = Report("thm-Sn")
    for n in range(5, nmax + 1, 2):
        for label, g in S.ones_candidates(n):
            rep.check(f"{label} (order {n}) passes the test", S.contains_half_spectrum(g, 1, True))
            got = S.classify(g)
            # listed graphs may coincide (S5 = H23, S7 = R7); classify names the first
            same = dict(S.ones_candidates(n)).get(got)
            ok = got == label or (same is not None and graph_isomorphic(g, same))
            rep.check(f"{label} (order {n}) is classified as a listed graph isomorphic to it",
                      ok, None if got == label else {"coincides_with": got})
    for k in range(3, 13):
        for name in ("R", "Q"):
            N = family(name, k).bipartite_adjacency()
            dec = S.rank_one_decompose(N @ N.T, 1)
            deg = [sum(N.row(i)) for i in range(N.rows)]
            ok = all(deg[i] == 1 + dec.delta * dec.w[i] ** 2 for i in range(N.rows))
            rep.check(f"{family_label(name, k)} block degrees are 1 + δw_i²", ok)
    _bounded_replay(rep, exhaustive, 1, 5)
    return rep


def suite_sec4(exhaustive: int = 7) -> Report:
    rep = Report("sec4")
    for label, (g, with_zero) in S.sqrt2_graphs().items():
        rep.check(f"{label}: ±√2 half-spectrum", S.contains_half_spectrum(g, 2, with_zero))
        if g.is_connected():
            got = S.classify(g)
            rep.check(f"{label}: classified as itself", got == label, None if got == label else got)
    for label, (g, _) in S.sqrt2_graphs().items():
        N = g.bipartite_adjacency()
        gram = N @ N.T
        try:
            dec = S.rank_one_decompose(gram, 2)
            rep.check(f"{label}: block Gram is 2I + δww^T", dec.matrix() == gram,
                      {"delta": dec.delta, "w": list(dec.w)})
        except S.DecompositionError as exc:
            rep.check(f"{label}: block Gram is 2I + δww^T", False, str(exc))
    _bounded_replay(rep, exhaustive, 2, 4)
    return rep


# --- corollaries --------------------------------------------------------

SDS_KS = (2, 6, 7, 8, 11, 12, 14, 15, 17, 19, 20, 23, 24, 30, 35)
RQ_KS = tuple(range(3, 13))


def suite_cor_sds(k: int | None = None) -> Report:
    rep = Report("cor-sds")
    ks = [k] if k is not None else list(SDS_KS)
    for r in parallel_map(S.verify_mates, ks):
        rep.check(r["case"], r["ok"], r)
    return rep


def suite_cor_rq(k: int | None = None) -> Report:
    rep = Report("cor-rq")
    ks = [k] if k is not None else list(RQ_KS)
    for r in parallel_map(S.verify_r_mates, ks):
        rep.check(r["case"], r["ok"], r)
    return rep


SUITES = {
    "lemma-bibd": suite_lemma_bibd,
    "thm-pseudo": suite_thm_pseudo,
    "lemma-spec": suite_lemma_spec,
    "thm-Ln": suite_thm_ln,
    "thm-Sn": suite_thm_sn,
    "sec4": suite_sec4,
    "conjecture": suite_conjecture,
    "cor-sds": suite_cor_sds,
    "cor-rq": suite_cor_rq,
}
