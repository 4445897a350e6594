"""Ideal files, seeded corpora and deterministic reports.

Ideal file format::

    # comment
    vars 3
    reduced: false
    x1*x2
    x2^2*x3
    0 1 1

The ``vars`` line comes first. Generators are either products of ``xi`` or
``xi^e`` joined by ``*``, or whitespace-separated exponent vectors of length
n. The optional ``reduced:`` line marks the scheme structure as the radical.
"""

from __future__ import annotations

import csv
import io
import json
import os
import random
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Sequence

from . import __version__
from .cech import lcd, min_nonvanishing_q, nonvanishing_range
from .filtrations import (FiltrationTable, compare_filtrations, default_box, embedding_shift_check,
                          generation_level_failures, jk_criterion_check, singularity_level_probe,
                          snc_hodge_ideal)
from .monomial import (MonomialIdeal, codim, format_monomial, is_complete_intersection,
                       minimal_generators, minimal_primes, radical, scheme_ideal)
from .resolutions import betti_numbers, proj_dim

SCHEMA = 1
COMMANDS = ("lcd", "betti", "filt", "ext", "gen-level", "dubois", "jk", "shift", "corpus")


class IdealParseError(ValueError):
    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


_FACTOR = re.compile(r"x(\d+)(?:\^(\d+))?$")


def parse_ideal_text(text: str) -> MonomialIdeal:
    n = None
    reduced = False
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        low = line.lower()
        if low.startswith("vars"):
            if n is not None:
                raise IdealParseError(lineno, "duplicate vars line")
            parts = line.split()
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                raise IdealParseError(lineno, "expected 'vars <n>' with n >= 1")
            n = int(parts[1])
            continue
        if low.startswith("reduced"):
            val = low.split(":", 1)[1].strip() if ":" in low else ""
            if val not in ("true", "false"):
                raise IdealParseError(lineno, "expected 'reduced: true' or 'reduced: false'")
            reduced = val == "true"
            continue
        if n is None:
            raise IdealParseError(lineno, "generator before the vars line")
        gens.append(_parse_generator(line, n, lineno))
    if n is None:
        raise IdealParseError(0, "missing vars line")
    return MonomialIdeal(n, minimal_generators(gens), reduced)


def _parse_generator(line: str, n: int, lineno: int) -> tuple[int, ...]:
    tokens = line.split()
    if all(re.fullmatch(r"\d+", t) for t in tokens):
        if len(tokens) != n:
            raise IdealParseError(lineno, f"exponent vector has {len(tokens)} entries, expected {n}")
        return tuple(int(t) for t in tokens)
    exps = [0] * n
    for factor in line.replace(" ", "").split("*"):
        if factor == "1":
            continue
        m = _FACTOR.match(factor)
        if not m:
            raise IdealParseError(lineno, f"cannot parse factor {factor!r}")
        i = int(m.group(1))
        if not 1 <= i <= n:
            raise IdealParseError(lineno, f"variable x{i} out of range for {n} variables")
        exps[i - 1] += int(m.group(2) or 1)
    return tuple(exps)


def parse_ideal(path: str | os.PathLike) -> MonomialIdeal:
    return parse_ideal_text(Path(path).read_text())


def serialize_ideal(I: MonomialIdeal) -> str:
    lines = [f"vars {I.n}"]
    if I.reduced:
        lines.append("reduced: true")
    for g in I.gens:
        lines.append(format_monomial(g) if any(g) else " ".join("0" * I.n))
    return "\n".join(lines) + "\n"


def corpus(seed: int, count: int, n: int, density: float = 0.25, max_gens: int = 8) -> list[MonomialIdeal]:
    """Seeded random squarefree ideals from variable subsets of size 2..n-1."""
    if not 1 <= n <= 10:
        raise ValueError("corpus needs 1 <= n <= 10")
    if not 1 <= count <= 500:
        raise ValueError("corpus needs 1 <= count <= 500")
    rng = random.Random(seed)
    subsets = [s for size in range(2, n) for s in combinations(range(n), size)]
    out: list[MonomialIdeal] = []
    seen = set()
    for _ in range(200 * count):
        if len(out) == count or not subsets:
            break
        picked = [s for s in subsets if rng.random() < density]
        if not picked:
            continue
        gens = minimal_generators(tuple(1 if i in s else 0 for i in range(n)) for s in picked)
        if len(gens) > max_gens or gens in seen:
            continue
        seen.add(gens)
        out.append(MonomialIdeal(n, gens))
    if not out:
        raise ValueError("empty corpus")
    return out


# --- reports ----------------------------------------------------------------

@dataclass
class RunConfig:
    command: str
    paths: list[str] = field(default_factory=list)
    box: int | None = None
    k_max: int = 2
    q: int | None = None
    fmt: str = "json"
    seed: int = 0
    jobs: int | None = None
    assert_verdicts: bool = False
    tcap: int | None = None
    count: int = 10
    n: int = 4
    density: float = 0.25
    added_vars: int = 1
    hodge_ideal: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.box is not None and self.box < 1:
            raise ValueError("box radius must be >= 1")
        if self.k_max < 0:
            raise ValueError("k_max must be >= 0")
        if self.fmt not in ("json", "csv", "md"):
            raise ValueError(f"unknown format {self.fmt!r}")


@dataclass
class Report:
    command: str
    inputs: list[dict]
    payload: dict
    verdicts: list[dict]
    diagnostics: list[str]

    @property
    def failed(self) -> list[dict]:
        return [v for v in self.verdicts if v["kind"] == "theorem" and not v["holds"]]

    def as_dict(self) -> dict:
        return {"schema": SCHEMA, "version": __version__, "command": self.command,
                "inputs": self.inputs, "payload": self.payload, "verdicts": self.verdicts,
                "diagnostics": self.diagnostics}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["verdict", "holds", "kind", "scope"])
        for v in self.verdicts:
            w.writerow([v["name"], v["holds"], v["kind"], v["scope"]])
        cells = self.payload.get("cells", [])
        if cells:
            w.writerow([])
            w.writerow(["q", "degree", "multiplicity", "level", "strand_dim", "F", "O", "E"])
            for c in cells:
                w.writerow([c["q"], " ".join(map(str, c["degree"])), c["multiplicity"], c.get("level", ""),
                            c["strand_dim"]] + [" ".join(map(str, c.get(key, []))) for key in ("F", "O", "E")])
        return buf.getvalue()

    def to_md(self) -> str:
        out = [f"# lochodge {self.command}", ""]
        for inp in self.inputs:
            out.append(f"- input: `{inp['ideal']}` in {inp['n']} variables")
        out += ["", "| verdict | holds | kind | scope |", "|---|---|---|---|"]
        for v in self.verdicts:
            out.append(f"| {v['name']} | {v['holds']} | {v['kind']} | {v['scope']} |")
        scalars = {k: v for k, v in sorted(self.payload.items()) if isinstance(v, (int, str, bool))}
        if scalars:
            out += ["", "| key | value |", "|---|---|"]
            out += [f"| {k} | {v} |" for k, v in scalars.items()]
        for d in self.diagnostics:
            out.append(f"\n> {d}")
        return "\n".join(out) + "\n"

    def render(self, fmt: str) -> str:
        return {"json": self.to_json, "csv": self.to_csv, "md": self.to_md}[fmt]()


def _verdict(name: str, holds: bool, scope: str, kind: str = "theorem") -> dict:
    return {"name": name, "holds": bool(holds), "scope": scope, "kind": kind}


def _echo(I: MonomialIdeal) -> dict:
    return {"n": I.n, "ideal": str(I), "generators": [list(g) for g in I.gens], "reduced": I.reduced}


def _vec(v: Sequence[Fraction]) -> list[str]:
    return [str(Fraction(x)) for x in v]


def _q_range(I: MonomialIdeal, q: int | None) -> list[int]:
    if q is not None:
        return [q]
    return list(range(codim(I), len(radical(I).gens) + 1))


def _map(fn, tasks, jobs):
    if jobs <= 1 or len(tasks) < 2:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, tasks))


def _box_scope(I: MonomialIdeal, B: int, k_max: int | None = None) -> str:
    s = f"box [-{B},{B}]^{I.n}"
    return s if k_max is None else f"{s}, k <= {k_max}"


def _lcd_payload(I: MonomialIdeal) -> tuple[dict, list[dict]]:
    R = radical(I)
    value = lcd(R)
    pd = proj_dim(R)
    c = codim(R)
    q0 = min_nonvanishing_q(R)
    maximal = frozenset(range(I.n)) in minimal_primes(R)
    payload = {"lcd": value, "pd": pd, "codim": c, "min_nonvanishing_q": q0,
               "nonvanishing": nonvanishing_range(R),
               "lyubeznik_check": "equal" if value == pd else "differ"}
    scope = "exact"
    verdicts = [_verdict("lcd_eq_pd", value == pd, scope),
                _verdict("codim_eq_min_q", c == q0, scope),
                _verdict("hartshorne_lichtenbaum", (value <= I.n - 1) == (not maximal), scope)]
    return payload, verdicts


def _table_cells(t: FiltrationTable, with_ext: bool) -> list[dict]:
    cells = []
    for c in t.cells:
        cell = {"q": t.q, "degree": list(c.degree), "multiplicity": c.multiplicity, "level": c.level,
                "strand_dim": c.strand_dim, "F": c.F, "O": c.O_dims,
                "O_bases": [[_vec(v) for v in b] for b in c.O]}
        if with_ext:
            cell.update({"E": c.E_dims, "E_bases": [[_vec(v) for v in b] for b in c.E],
                         "ext_dims": c.ext_dims, "koszul_t": c.koszul_t})
        cells.append(cell)
    return cells


_THEOREM_FLAGS = ("F_in_O", "E_in_O", "F0_in_E0", "O_monotone", "E_monotone", "IF_in_F",
                  "E_eq_O_at_codim", "ext_injective_at_codim", "downward_closed")


def _filt_task(args):
    I, q, B, K, tcap, with_ext = args
    t = compare_filtrations(I, q, B, K, with_ext=with_ext, tcap=tcap)
    return {"cells": _table_cells(t, with_ext), "verdicts": t.verdicts,
            "observations": t.observations, "covered": t.degrees_covered}


def _filt_sections(I, qs, B, K, tcap, with_ext, jobs):
    return _map(_filt_task, [(I, q, B, K, tcap, with_ext) for q in qs], jobs)


def _cmd_filt(I, cfg, jobs, with_ext=True):
    B = cfg.box or default_box(I, cfg.k_max)
    qs = _q_range(I, cfg.q)
    scope = _box_scope(I, B, cfg.k_max)
    sections = _filt_sections(I, qs, B, cfg.k_max, cfg.tcap, with_ext, jobs)
    cells, verdicts, per_q = [], [], []
    for q, sec in zip(qs, sections):
        cells += sec["cells"]
        v = sec["verdicts"]
        for name in _THEOREM_FLAGS:
            if name in v:
                verdicts.append(_verdict(f"q={q}:{name}", v[name], scope))
        for k, eq in enumerate(v["F_eq_O"]):
            verdicts.append(_verdict(f"q={q}:F{k}_eq_O{k}", eq, scope, "observation"))
        for key, vals in sorted(sec["observations"].items()):
            if isinstance(vals, list):
                for k, ok in enumerate(vals):
                    verdicts.append(_verdict(f"q={q}:{key}_k{k}", ok, scope, "observation"))
        per_q.append({"q": q, "F_eq_O_upto": v["F_eq_O_upto"], "degrees_with_nonzero_strand": sec["covered"],
                      "max_koszul_t": sec["observations"].get("max_koszul_t")})
    return {"box": B, "k_max": cfg.k_max, "per_q": per_q, "cells": cells}, verdicts


def _cmd_ext(I, cfg, jobs):
    payload, verdicts = _cmd_filt(I, cfg, jobs)
    keep = ("E_in_O", "ext_injective_at_codim", "E_eq_O_at_codim", "E_monotone")
    verdicts = [v for v in verdicts if v["name"].split(":", 1)[1] in keep]
    payload["cells"] = [{k: c[k] for k in ("q", "degree", "multiplicity", "strand_dim", "E", "E_bases",
                                            "ext_dims", "koszul_t")} for c in payload["cells"]]
    return payload, verdicts


def _cmd_dubois(I, cfg, jobs):
    B = cfg.box or default_box(I, 0)
    qs = _q_range(I, cfg.q)
    sections = _filt_sections(I, qs, B, 0, cfg.tcap, True, jobs)
    scope = _box_scope(I, B)
    verdicts, per_q = [], []
    for q, sec in zip(qs, sections):
        ok = sec["verdicts"]["F0_eq_E0"]
        per_q.append({"q": q, "F0_eq_E0": ok})
        kind = "theorem" if I.is_squarefree else "observation"
        verdicts.append(_verdict(f"q={q}:F0_eq_E0", ok, scope, kind))
    return {"box": B, "per_q": per_q}, verdicts


def _gen_task(args):
    I, q, p, B = args
    return [list(u) for u in generation_level_failures(I, q, p, B)]


def _cmd_gen_level(I, cfg, jobs):
    B = cfg.box or 4
    qs = _q_range(I, cfg.q)
    tasks = [(I, q, p, B) for q in qs for p in range(cfg.k_max + 1)]
    results = _map(_gen_task, tasks, jobs)
    rows, verdicts = [], []
    for (_, q, p, _), bad in zip(tasks, results):
        rows.append({"q": q, "p": p, "failures": bad})
        verdicts.append(_verdict(f"q={q}:generated_at_level_{p}", not bad, _box_scope(I, B)))
    return {"box": B, "checks": rows}, verdicts


def _cmd_jk(I, cfg, hodge: MonomialIdeal | None):
    Is = scheme_ideal(I)
    if not is_complete_intersection(Is):
        raise ValueError("jk needs generators with pairwise disjoint supports")
    f = list(Is.gens)
    rows, verdicts = [], []
    snc = hodge is None
    for k in range(cfg.k_max + 1):
        Ik = hodge if hodge is not None else snc_hodge_ideal(f, k)
        rows.append({"k": k, "criterion": jk_criterion_check(f, k, Ik), "hodge_ideal": str(Ik)})
    payload = {"k_max": cfg.k_max, "rows": rows, "snc": snc}
    if snc:
        B = cfg.box or default_box(I, cfg.k_max)
        probe = singularity_level_probe(I, B, cfg.k_max)
        crit = [r["criterion"] for r in rows]
        crit_level = -1
        for ok in crit:
            if not ok:
                break
            crit_level += 1
        payload.update({"verified_level": probe.verified_level, "box": B, "box_limited": probe.box_limited,
                        "first_failure": list(probe.first_failure) if probe.first_failure else None})
        scope = _box_scope(I, B, cfg.k_max)
        verdicts.append(_verdict("criterion_matches_level", crit_level == probe.verified_level, scope))
        verdicts.append(_verdict("downward_closed", probe.downward_closed, scope))
    else:
        for r in rows:
            verdicts.append(_verdict(f"k={r['k']}:criterion", r["criterion"], "supplied hodge ideal",
                                     "observation"))
    return payload, verdicts


def _cmd_shift(I, cfg, jobs):
    B = cfg.box or 4
    d = cfg.added_vars
    qs = _q_range(I, cfg.q)
    rows, verdicts = [], []
    for q in qs:
        ok = embedding_shift_check(I, d, q, B, cfg.k_max)
        rows.append({"q": q, "added_vars": d, "holds": ok})
        verdicts.append(_verdict(f"q={q}:embedding_shift_d{d}", ok, f"box [-{B},{B}]^{I.n + d}, p <= {cfg.k_max}"))
    return {"box": B, "rows": rows}, verdicts


def _cmd_betti(I, cfg):
    fwd = betti_numbers(I)
    rev = betti_numbers(I, reverse=True)
    payload = {"totals": fwd.totals(), "graded": fwd.graded(), "pd": fwd.pd, "depth": I.n - fwd.pd,
               "multigraded": [{"i": i, "degree": list(b), "beta": v} for (i, b), v in fwd.entries.items()]}
    return payload, [_verdict("minimization_order_independent", fwd.entries == rev.entries, "exact")]


def _corpus_task(I):
    return _lcd_payload(I)


def _cmd_corpus(cfg, jobs):
    members = corpus(cfg.seed, cfg.count, cfg.n, cfg.density)
    results = _map(_corpus_task, members, jobs)
    rows, verdicts = [], []
    for idx, (I, (payload, vs)) in enumerate(zip(members, results)):
        rows.append({"index": idx, "ideal": str(I), "generators": [list(g) for g in I.gens], **payload})
        for v in vs:
            verdicts.append({**v, "name": f"member{idx}:{v['name']}"})
    return members, {"seed": cfg.seed, "count": len(members), "n": cfg.n, "density": cfg.density,
                     "members": rows}, verdicts


def run(cfg: RunConfig) -> Report:
    jobs = cfg.jobs if cfg.jobs is not None else (os.cpu_count() or 1)
    diagnostics: list[str] = []
    if cfg.command == "corpus":
        members, payload, verdicts = _cmd_corpus(cfg, jobs)
        return Report(cfg.command, [_echo(I) for I in members], payload, verdicts, diagnostics)
    if len(cfg.paths) != 1:
        raise ValueError(f"{cfg.command} needs exactly one ideal file")
    I = parse_ideal(cfg.paths[0])
    if I.is_zero or I.is_unit:
        raise ValueError("ideal must be proper and nonzero")
    if not I.is_squarefree:
        note = "strands computed on the radical " + str(radical(I))
        if not I.reduced:
            note += "; filtrations use the given generators as scheme structure"
        diagnostics.append(note)
    if cfg.command == "lcd":
        payload, verdicts = _lcd_payload(I)
    elif cfg.command == "betti":
        payload, verdicts = _cmd_betti(I, cfg)
    elif cfg.command == "filt":
        payload, verdicts = _cmd_filt(I, cfg, jobs)
    elif cfg.command == "ext":
        payload, verdicts = _cmd_ext(I, cfg, jobs)
    elif cfg.command == "gen-level":
        payload, verdicts = _cmd_gen_level(I, cfg, jobs)
    elif cfg.command == "dubois":
        payload, verdicts = _cmd_dubois(I, cfg, jobs)
    elif cfg.command == "jk":
        hodge = parse_ideal(cfg.hodge_ideal) if cfg.hodge_ideal else None
        payload, verdicts = _cmd_jk(I, cfg, hodge)
    else:
        payload, verdicts = _cmd_shift(I, cfg, jobs)
    return Report(cfg.command, [_echo(I)], payload, verdicts, diagnostics)
