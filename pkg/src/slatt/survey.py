"""Per-lattice check records and corpus sweeps.

``check_lattice`` runs every validator and check on one lattice and returns
a JSON-ready record; ``survey`` maps it over a list of recipes, optionally in
a process pool, and sorts the records so the report does not depend on the
number of workers.
"""
from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, Sequence

import numpy as np

from .congruence import ji_poset, oracle_leq_matrix
from .construct import Recipe, apply_recipe, enumerate_corpus, random_recipe
from .lattice import (
    Lattice,
    LatticeError,
    MethodsDisagree,
    boundary_chains,
    check_cell_incidence,
    four_cells,
    validate_rectangular,
    validate_semimodular,
    validate_slim,
)
from .layout import LayoutDegenerate, coordinates, slope_kind, validate_c1
from .lemmas import LEMMAS, trajectory_color_check
from .poset import PROPERTIES
from .swing import (
    ClassificationMismatch,
    CovnewViolation,
    MaxMismatch,
    classify_edges,
    edge_relations,
    upper_boundary_colors,
    upper_edge_color_check,
    validate_covnew,
)

log = logging.getLogger(__name__)

CHECK_SCHEMA = "slatt.check.v1"
SURVEY_SCHEMA = "slatt.survey.v1"
THEOREM_CHECKS = tuple(f"property:{name}" for name in PROPERTIES)
MAX_EXAMPLES = 5


def validity(K: Lattice) -> dict:
    """Run the structural validators in order, stopping at the first failure."""
    out = {"semimodular": False, "slim": False, "rectangular": False, "four_cells": False, "diagnosis": None}
    v = validate_semimodular(K)
    if not v:
        out["diagnosis"] = f"not semimodular: {v.reason}"
        return out
    out["semimodular"] = True
    try:
        v = validate_slim(K)
    except MethodsDisagree as exc:
        out["diagnosis"] = f"slimness tests disagree (input is probably not planar): {exc}"
        return out
    if not v:
        out["diagnosis"] = f"not slim: {v.reason}"
        return out
    out["slim"] = True
    try:
        validate_rectangular(K)
        out["rectangular"] = True
        cells = four_cells(K)
        inc = check_cell_incidence(K, cells, boundary_chains(K).boundary_edges)
        if not inc:
            raise LatticeError(inc.reason)
        out["four_cells"] = True
    except LatticeError as exc:
        out["diagnosis"] = f"not slim rectangular: {exc}"
    return out


def _pairs(K: Lattice, mask: np.ndarray) -> list[list[str]]:
    return [[str(K.edges[i]), str(K.edges[j])] for i, j in np.argwhere(mask)[:MAX_EXAMPLES]]


def _jsonable(w):
    if isinstance(w, dict):
        return {str(k): _jsonable(v) for k, v in w.items()}
    if isinstance(w, (list, tuple)):
        return [_jsonable(v) for v in w]
    if isinstance(w, (np.integer,)):
        return int(w)
    return w


def check_lattice(K: Lattice) -> dict:
    """Every check on one lattice, as a JSON-ready record."""
    rec: dict = {"n": K.n, "edges": len(K.edges), "valid": validity(K)}
    valid = all(rec["valid"][k] for k in ("semimodular", "slim", "rectangular", "four_cells"))
    rec["valid"]["ok"] = valid
    failures: list[str] = []
    rec["failures"] = failures
    if not valid:
        return rec

    coloring = ji_poset(K)
    P, col = coloring.P, coloring.col
    rec["p_size"] = P.k
    rec["p"] = {"covers": P.covers(), "maximal": list(P.maximal)}

    props, witnesses = {}, {}
    for name, check in PROPERTIES.items():
        v = check(P)
        props[name] = v.ok
        if v.witness is not None:
            witnesses[name] = _jsonable(v.witness)
        if not v.ok:
            failures.append(f"property:{name}")
    rec["properties"] = props
    rec["witnesses"] = witnesses

    rel = edge_relations(K)
    oracle = oracle_leq_matrix(K)
    swing = rel.leq_matrix()
    mismatch = swing != oracle
    rec["oracle"] = {
        "pairs": int(mismatch.size),
        "mismatches": int(mismatch.sum()),
        "examples": _pairs(K, mismatch),
    }
    if mismatch.any():
        failures.append("oracle")

    cols = np.array([col[e] for e in K.edges])
    same = cols[:, None] == cols[None, :]
    covered = P.cover[cols][:, cols].T  # [i, j]: col e_j is covered by col e_i
    eq_bad = rel.equal_matrix() != same
    cov_bad = rel.cover_matrix() != covered
    cor: dict = {
        "equal_mismatches": int(eq_bad.sum()),
        "equal_examples": _pairs(K, eq_bad),
        "cover_mismatches": int(cov_bad.sum()),
        "cover_examples": _pairs(K, cov_bad),
    }
    if eq_bad.any():
        failures.append("corollary:equal")
    if cov_bad.any():
        failures.append("corollary:cover")
    try:
        upper_boundary_colors(K)
        cor["max_boundary"] = True
    except MaxMismatch:
        cor["max_boundary"] = False
        failures.append("corollary:max")
    cor["upper_edge_equal"] = upper_edge_color_check(K)
    if not cor["upper_edge_equal"]:
        failures.append("corollary:upper-equal")
    covnew = {"checked": 0, "vacuous": 0, "violations": []}
    for U in boundary_chains(K).upper_left_edges:
        covnew["checked"] += 1
        try:
            if validate_covnew(K, U).vacuous:
                covnew["vacuous"] += 1
        except CovnewViolation as exc:
            covnew["violations"].append({"edge": str(U), "equation": exc.equation, "detail": str(exc)})
    if covnew["violations"]:
        failures.append("corollary:covnew")
    cor["covnew"] = covnew
    rec["corollaries"] = cor

    lemmas = {}
    for name, check in LEMMAS.items():
        v = check(K)
        lemmas[name] = v.ok
        if not v.ok:
            failures.append(f"lemma:{name}")
    rec["lemmas"] = lemmas

    structure: dict = {}
    try:
        kinds = classify_edges(K)
        structure["classification"] = True
        structure["steep_edges"] = sorted(str(e) for e, k in kinds.items() if k.value == "steep")
    except ClassificationMismatch as exc:
        structure["classification"] = False
        structure["classification_detail"] = str(exc)
        failures.append("classification")
    structure["trajectory_colors"] = trajectory_color_check(K).ok
    if not structure["trajectory_colors"]:
        failures.append("trajectory-colors")
    try:
        layout = coordinates(K)
        c1 = validate_c1(K, layout)
        structure["layout_c1"] = c1.ok
        if not c1.ok:
            structure["layout_detail"] = c1.reason
        if structure["classification"]:
            off = [str(e) for e, k in kinds.items() if slope_kind(layout, e) != k.value]
            structure["slopes_match_classification"] = not off
            if off:
                structure["slope_mismatches"] = off[:MAX_EXAMPLES]
                failures.append("slopes")
    except LayoutDegenerate as exc:
        structure["layout_c1"] = False
        structure["layout_detail"] = str(exc)
    if not structure["layout_c1"]:
        failures.append("layout")
    rec["structure"] = structure
    return rec


def check_recipe(recipe: Recipe, timing: bool = False) -> dict:
    start = time.perf_counter()
    rec = {"recipe": recipe.to_dict()}
    try:
        rec.update(check_lattice(apply_recipe(recipe)))
    except Exception as exc:  # recorded, the sweep goes on
        log.exception("check failed for %s", recipe)
        rec["failures"] = [f"error:{type(exc).__name__}: {exc}"]
    if timing:
        rec["seconds"] = round(time.perf_counter() - start, 4)
    return rec


def default_recipes(
    max_m: int = 4, max_n: int = 4, max_forks: int = 2, random_count: int = 100,
    random_bounds: tuple[int, int, int] = (6, 6, 4),
) -> list[Recipe]:
    """Exhaustive small corpus plus seeded random recipes (seeds ``0..random_count-1``)."""
    recipes = list(enumerate_corpus(max_m, max_n, max_forks))
    recipes += [random_recipe(seed, *random_bounds) for seed in range(random_count)]
    return recipes


def _check_star(args):
    return check_recipe(*args)


def survey(recipes: Sequence[Recipe], jobs: int = 1, timing: bool = False) -> dict:
    """Check every recipe; the report is identical for any ``jobs``."""
    work = [(r, timing) for r in recipes]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_check_star, work, chunksize=8))
    else:
        records = [check_recipe(r, timing) for r in recipes]
    order = sorted(range(len(records)), key=lambda i: Recipe.from_dict(records[i]["recipe"]).sort_key())
    records = [records[i] for i in order]
    return {"schema": SURVEY_SCHEMA, "records": records, "summary": summarize(records)}


def summarize(records: Iterable[dict]) -> dict:
    records = list(records)
    by_check: dict[str, int] = {}
    for rec in records:
        for name in rec.get("failures", []):
            key = name.split(":", 1)[0] if name.startswith("error:") else name
            by_check[key] = by_check.get(key, 0) + 1
    return {
        "recipes": len(records),
        "valid": sum(1 for r in records if r.get("valid", {}).get("ok")),
        "failed_recipes": sum(1 for r in records if r.get("failures")),
        "theorem_failures": sum(
            1 for r in records if any(f in THEOREM_CHECKS for f in r.get("failures", []))
        ),
        "by_check": dict(sorted(by_check.items())),
    }


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("SLATT_JOBS", "1")))
    except ValueError:
        return 1
