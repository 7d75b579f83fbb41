"""Sweep orchestration behind the command line: exhaustive conjecture
verification, condition statistics, coefficient dumps, transition-matrix
reports, and the on-disk cache.

Reports are plain JSON-able dictionaries with deterministic content: rows
are sorted by canonical word, percentages are exact rationals rendered to
two decimals, and every random choice is driven by the configured seed, so
identical configurations produce byte-identical output.

Parallel sweeps fork worker processes over blocks of group elements after
the read-only tables are built; results are merged in index order, so the
thread count never changes the output.
"""

from __future__ import annotations

import hashlib
import json
import multiprocessing
import os
import random
from dataclasses import dataclass
from fractions import Fraction

from .coeffs import atom_coeffs, casselman_shalika_check, char_coeffs, \
    closed_form_coeff
from .errors import BudgetError, ConditionError, DomainError
from .hecke import m_matrix, m_product, sample_spectral_point
from .roots import build_root_system
from .shellability import (_greedy_chain_idx, chain_realizes_idx,
                           condition_B, is_good_word, lambda_positions_idx,
                           s_set)
from .weyl import WeylGroup

DEFAULT_TRIPLE_BUDGET = 2_000_000
LARGE_ORDER_THRESHOLD = 400


@dataclass
class SweepConfig:
    type_letter: str = "A"
    rank: int = 2
    seed: int = 0
    threads: int = 1
    fmt: str = "json"
    cache_dir: str | None = None
    large: bool = False
    points: int = 20
    budget: int = DEFAULT_TRIPLE_BUDGET
    mode: str = "fast"


def pct_string(fr: Fraction) -> str:
    """Exact rational percentage rendered to two decimals."""
    cents = round(fr * 100)
    return f"{cents // 100}.{cents % 100:02d}"


def word_str(word) -> str:
    return ",".join(str(a) for a in word)


def parse_int_seq(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise DomainError(f"cannot parse integer sequence {text!r}") from None


# -- group construction and cache ---------------------------------------------

def _cache_path(cache_dir: str, type_letter: str, rank: int) -> str:
    return os.path.join(cache_dir, f"wwl-{type_letter}{rank}.json")


def _cache_payload(group: WeylGroup) -> dict:
    group.ensure_bruhat()
    return {
        "type": group.rs.type_letter,
        "rank": group.rs.rank,
        "order": group.order(),
        "bruhat": [format(m, "x") for m in group._bruhat],
        "reduced_word_counts": group.reduced_word_counts(),
    }


def _payload_digest(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


def save_group_cache(group: WeylGroup, cache_dir: str) -> str:
    os.makedirs(cache_dir, exist_ok=True)
    payload = _cache_payload(group)
    path = _cache_path(cache_dir, group.rs.type_letter, group.rs.rank)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"payload": payload, "sha256": _payload_digest(payload)},
                  fh, sort_keys=True)
    return path


def load_group_cache(group: WeylGroup, cache_dir: str) -> bool:
    """Install cached Bruhat masks and word counts; False when absent or
    corrupt (a corrupt file is ignored, not trusted)."""
    path = _cache_path(cache_dir, group.rs.type_letter, group.rs.rank)
    if not os.path.exists(path):
        return False
    try:
        with open(path, encoding="utf-8") as fh:
            blob = json.load(fh)
        payload = blob["payload"]
        if blob["sha256"] != _payload_digest(payload):
            return False
        if payload["order"] != group.order():
            return False
    except (KeyError, ValueError, OSError):
        return False
    group.ensure_tables()
    group._bruhat = [int(h, 16) for h in payload["bruhat"]]
    group._nwords = list(payload["reduced_word_counts"])
    return True


def build_group(config: SweepConfig) -> WeylGroup:
    group = WeylGroup(build_root_system(config.type_letter, config.rank))
    if config.cache_dir:
        if not load_group_cache(group, config.cache_dir):
            group.ensure_bruhat()
            save_group_cache(group, config.cache_dir)
    return group


def require_small_or_large(group: WeylGroup, config: SweepConfig) -> None:
    if group.order() > LARGE_ORDER_THRESHOLD and not config.large:
        raise BudgetError(
            f"group of order {group.order()} needs --large")


# -- parallel helper ----------------------------------------------------------

_WORKER_GROUP: WeylGroup | None = None
_WORKER_FN = None


def _worker(item):
    return _WORKER_FN(_WORKER_GROUP, item)


def parallel_over(group: WeylGroup, fn, items, threads: int):
    """Map fn(group, item) over items, preserving order.  Forks only when
    asked to and possible; the group tables must already be built."""
    items = list(items)
    if threads <= 1 or len(items) <= 1 or \
            multiprocessing.get_start_method(allow_none=True) not in (None, "fork"):
        return [fn(group, it) for it in items]
    global _WORKER_GROUP, _WORKER_FN
    _WORKER_GROUP, _WORKER_FN = group, fn
    ctx = multiprocessing.get_context("fork")
    chunk = max(1, len(items) // (threads * 8))
    with ctx.Pool(threads) as pool:
        return pool.map(_worker, items, chunksize=chunk)


# -- conjecture verification ----------------------------------------------------

def _flags_idx(group: WeylGroup, xi: int, word, dels):
    lam = lambda_positions_idx(group, xi, dels)
    inc = _greedy_chain_idx(group, xi, word, pick_max=False)
    dec = _greedy_chain_idx(group, xi, word, pick_max=True)
    rev = tuple(reversed(dec))
    return lam, inc, dec, (lam == rev, inc == rev, lam == inc)


def _verify_w(group: WeylGroup, wi: int):
    mask = group.bruhat_mask(wi)
    xs = [xi for xi in range(group.order()) if (mask >> xi) & 1]
    triples = 0
    violations = []
    for word in group._iter_words_idx(wi):
        dels = group.deleted_word_elements_idx(word)
        for xi in xs:
            lam, inc, dec, flags = _flags_idx(group, xi, word, dels)
            triples += 1
            if not (flags[0] == flags[1] == flags[2]):
                violations.append({
                    "w": list(group.canon_of_idx(wi)),
                    "word": list(word),
                    "x": list(group.canon_of_idx(xi)),
                    "lambda": list(lam),
                    "chain_min": list(inc),
                    "chain_max": list(dec),
                    "flags": list(flags),
                })
    w_el = group.elem_of(wi)
    deodhar_failures = []
    for xi in xs:
        x_el = group.elem_of(xi)
        if len(s_set(group, x_el, w_el)) < \
                group.len_of_idx(wi) - group.len_of_idx(xi):
            deodhar_failures.append({
                "w": list(group.canon_of_idx(wi)),
                "x": list(group.canon_of_idx(xi)),
            })
    return {"triples": triples, "violations": violations,
            "deodhar_failures": deodhar_failures}


def verify_conjecture(group: WeylGroup, config: SweepConfig) -> dict:
    """Exhaustively test the equivalence of the three per-word flags over
    every (w, reduced word, x <= w) triple, stopping at the triple budget."""
    group.ensure_bruhat()
    counts = group.reduced_word_counts()
    size = group.order()
    per_w = [counts[wi] * group.bruhat_mask(wi).bit_count()
             for wi in range(size)]
    included = []
    cum = 0
    for wi in range(size):
        if cum + per_w[wi] > config.budget:
            break
        cum += per_w[wi]
        included.append(wi)
    partial = len(included) < size
    results = parallel_over(group, _verify_w, included, config.threads)
    report = {
        "type": group.rs.type_letter,
        "rank": group.rs.rank,
        "elements_swept": len(included),
        "elements_total": size,
        "triples_tested": sum(r["triples"] for r in results),
        "violations": [v for r in results for v in r["violations"]],
        "deodhar_failures": [d for r in results for d in r["deodhar_failures"]],
        "partial": partial,
    }
    return report


# -- statistics ------------------------------------------------------------------

def _stats_row_fast(group: WeylGroup, wi: int):
    """(w index, n_leq, n_cond) via the cheapest per-word flag: the deletion
    set must have minimal size and realize the increasing chain.  Justified
    by the verified equivalence of the three flags; the independent mode
    below recomputes everything from scratch.

    Two shortcuts keep large sweeps tractable.  The deletion positions of
    any reduced word biject onto S(x,w) through the gamma roots, so the
    deletion set has minimal size for one word iff #S(x,w) equals the
    length difference: pairs failing that never need a word enumerated.
    And the word enumeration stops as soon as every surviving x has found
    a witness."""
    mask = group.bruhat_mask(wi)
    xs = [xi for xi in range(group.order()) if (mask >> xi) & 1]
    lw = group.len_of_idx(wi)
    w_el = group.elem_of(wi)
    lower = [group.idx_of(w_el * group.reflection(alpha))
             for alpha in group.rs.positive_roots]
    lower = [ri for ri in lower if group.len_of_idx(ri) < lw]
    unsat = set()
    for xi in xs:
        d = lw - group.len_of_idx(xi)
        size_s = sum(1 for ri in lower if group.leq_idx(xi, ri))
        if size_s == d:
            unsat.add(xi)
    n_candidates = len(unsat)
    for word in group._iter_words_idx(wi):
        if not unsat:
            break
        dels = group.deleted_word_elements_idx(word)
        satisfied = []
        for xi in unsat:
            lam = lambda_positions_idx(group, xi, dels)
            if chain_realizes_idx(group, xi, word, lam):
                satisfied.append(xi)
        unsat.difference_update(satisfied)
    return wi, len(xs), n_candidates - len(unsat)


def _stats_row_independent(group: WeylGroup, wi: int):
    """Same counts, but per word all three flags are computed independently
    and must agree."""
    mask = group.bruhat_mask(wi)
    xs = [xi for xi in range(group.order()) if (mask >> xi) & 1]
    unsat = set(xs)
    for word in group._iter_words_idx(wi):
        if not unsat:
            break
        dels = group.deleted_word_elements_idx(word)
        satisfied = []
        for xi in unsat:
            _, _, _, flags = _flags_idx(group, xi, word, dels)
            assert flags[0] == flags[1] == flags[2], \
                "per-word flags disagree: equivalence violated"
            if flags[0]:
                satisfied.append(xi)
        unsat.difference_update(satisfied)
    return wi, len(xs), len(xs) - len(unsat)


def _stats_progress_path(config: SweepConfig) -> str | None:
    if not (config.cache_dir and config.large):
        return None
    key = f"{config.type_letter}{config.rank}-{config.mode}"
    return os.path.join(config.cache_dir, f"wwl-stats-{key}.progress.json")


def stats_sweep(group: WeylGroup, config: SweepConfig) -> dict:
    """One row per element: how many x below it satisfy the chain condition
    for some reduced word.  Large groups checkpoint per element block and
    resume from the progress file."""
    group.ensure_bruhat()
    require_small_or_large(group, config)
    size = group.order()
    row_fn = _stats_row_fast if config.mode == "fast" else _stats_row_independent

    done: dict[int, tuple[int, int]] = {}
    progress_path = _stats_progress_path(config)
    if progress_path and os.path.exists(progress_path):
        try:
            with open(progress_path, encoding="utf-8") as fh:
                blob = json.load(fh)
            if blob.get("order") == size:
                done = {int(k): tuple(v) for k, v in blob["done"].items()}
        except (ValueError, OSError, KeyError):
            done = {}

    todo = [wi for wi in range(size) if wi not in done]
    block = max(1, min(64, size // 8))
    for start in range(0, len(todo), block):
        chunk = todo[start:start + block]
        for wi, n_leq, n_cond in parallel_over(group, row_fn, chunk,
                                               config.threads):
            done[wi] = (n_leq, n_cond)
        if progress_path:
            os.makedirs(config.cache_dir, exist_ok=True)
            with open(progress_path, "w", encoding="utf-8") as fh:
                json.dump({"order": size,
                           "done": {str(k): list(v) for k, v in done.items()}},
                          fh, sort_keys=True)

    rows = []
    for wi in sorted(range(size), key=group.canon_of_idx):
        n_leq, n_cond = done[wi]
        pct = Fraction(100 * n_cond, n_leq)
        rows.append({
            "w": list(group.canon_of_idx(wi)),
            "n_leq": n_leq,
            "n_cond": n_cond,
            "pct": pct_string(pct),
            "_pct_exact": pct,
        })

    pcts = sorted(r["_pct_exact"] for r in rows)
    bins = [0] * 10
    for p in pcts:
        bins[min(9, int(p // 10))] += 1
    n = len(pcts)
    q3 = pcts[-(-3 * n // 4) - 1]  # nearest-rank upper quartile
    mode_bin = max(range(10), key=lambda b: (bins[b], b))
    for r in rows:
        del r["_pct_exact"]
    return {
        "type": group.rs.type_letter,
        "rank": group.rs.rank,
        "mode": config.mode,
        "rows": rows,
        "histogram": {"bin_edges": [10 * b for b in range(11)],
                      "counts": bins},
        "mode_bin": [10 * mode_bin, 10 * (mode_bin + 1)],
        "q3": pct_string(q3),
    }


def stats_to_csv(report: dict) -> str:
    import csv
    import io
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["type", "rank", "w", "n_leq", "n_cond", "pct"])
    for r in report["rows"]:
        writer.writerow([report["type"], report["rank"],
                         word_str(r["w"]), r["n_leq"], r["n_cond"], r["pct"]])
    return buf.getvalue()


# -- coefficient dump -----------------------------------------------------------

def coeff_report(group: WeylGroup, w_word, x_word=None,
                 include_char: bool = False) -> dict:
    group.ensure_bruhat()
    w_word = tuple(w_word)
    w = group.element_from_word(w_word)
    if group.length(w) != len(w_word):
        raise DomainError("the given word for w is not reduced")
    table = atom_coeffs(group, w, w_word)
    chars = char_coeffs(group, w, w_word) if include_char else None

    def entry_for(x):
        obj = {
            "x": list(group.canonical_word(x)),
            "value": table.entries[x].to_json_obj(),
        }
        try:
            closed = closed_form_coeff(group, x, w_word)
            obj["condition"] = "holds"
            obj["closed_form"] = closed.to_json_obj()
            obj["closed_form_matches"] = closed == table.entries[x]
        except ConditionError as exc:
            obj["condition"] = "fails"
            obj["closed_form"] = None
            obj["condition_labels"] = {
                "lambda": list(exc.lambda_set or ()),
                "chain_min": list(exc.chain_min or ()),
                "chain_max": list(exc.chain_max or ()),
            }
        if chars is not None:
            obj["char_coeff"] = chars.entries[x].to_json_obj()
        return obj

    report = {
        "type": group.rs.type_letter,
        "rank": group.rs.rank,
        "w": list(w_word),
        "zero_entries": [list(group.canonical_word(x))
                         for x in table.zero_keys],
    }
    if x_word is None:
        report["coeffs"] = [entry_for(x) for x in
                            group.interval(group.identity, w)]
    else:
        x = group.element_from_word(tuple(x_word))
        if not group.bruhat_leq(x, w):
            raise DomainError("x is not below w")
        report["coeffs"] = [entry_for(x)]
    return report


# -- transition matrix ----------------------------------------------------------

def mtx_report(group: WeylGroup, config: SweepConfig) -> dict:
    """m(x, w) at seeded points for all pairs; condition-(B) pairs also get
    the closed product and an agreement flag."""
    group.ensure_bruhat()
    rng = random.Random(config.seed)
    points = [sample_spectral_point(group.rs, rng)
              for _ in range(config.points)]
    size = group.order()
    matrices = [m_matrix(group, pt) for pt in points]
    pairs = []
    ok = True
    for xi in range(size):
        x = group.elem_of(xi)
        for wi in range(size):
            w = group.elem_of(wi)
            values = [m[xi][wi] for m in matrices]
            entry = {
                "x": list(group.canon_of_idx(xi)),
                "w": list(group.canon_of_idx(wi)),
                "points": config.points,
                "value_at_point0": str(values[0]) if values else "0",
            }
            if not group.leq_idx(xi, wi):
                entry["upper_triangular_zero"] = all(v == 0 for v in values)
                ok = ok and entry["upper_triangular_zero"]
                entry["agree"] = None
            elif xi == wi:
                entry["diagonal_one"] = all(v == 1 for v in values)
                ok = ok and entry["diagonal_one"]
                entry["agree"] = None
            else:
                has_b, word = condition_B(group, x, w)
                entry["condition_b"] = has_b
                if has_b:
                    prods = [m_product(group, x, w, word, pt) for pt in points]
                    entry["agree"] = prods == values
                    ok = ok and entry["agree"]
                else:
                    entry["agree"] = None
            pairs.append(entry)
    return {
        "type": group.rs.type_letter,
        "rank": group.rs.rank,
        "points": config.points,
        "seed": config.seed,
        "pairs": pairs,
        "ok": ok,
    }


# -- remaining commands -----------------------------------------------------------

def cs_report(group: WeylGroup, lam) -> dict:
    lam = tuple(lam)
    return {
        "type": group.rs.type_letter,
        "rank": group.rs.rank,
        "lambda": list(lam),
        "equal": casselman_shalika_check(group, lam),
    }


def good_words_report(group: WeylGroup) -> dict:
    """Census over pairs with #S(x,w) equal to the length difference: does
    any reduced word of w delete down to x cleanly?"""
    group.ensure_bruhat()
    size = group.order()
    pairs = []
    missing = 0
    for wi in range(size):
        w = group.elem_of(wi)
        mask = group.bruhat_mask(wi)
        for xi in range(size):
            if not (mask >> xi) & 1:
                continue
            x = group.elem_of(xi)
            if len(s_set(group, x, w)) != \
                    group.len_of_idx(wi) - group.len_of_idx(xi):
                continue
            has_good = any(is_good_word(group, x, word)
                           for word in group.iter_reduced_words(w))
            if not has_good:
                missing += 1
            pairs.append({
                "x": list(group.canon_of_idx(xi)),
                "w": list(group.canon_of_idx(wi)),
                "has_good_word": has_good,
            })
    return {
        "type": group.rs.type_letter,
        "rank": group.rs.rank,
        "qualifying_pairs": len(pairs),
        "pairs_without_good_word": missing,
        "pairs": pairs,
    }


# -- main-theorem sweep (shared by tests and reports) ------------------------------

def main_theorem_sweep(group: WeylGroup) -> dict:
    """Across every (w, reduced word, x <= w): where the per-word condition
    holds, the closed form must equal the recursion entry; also hunt for one
    condition-failing triple where the label-driven formula differs."""
    group.ensure_bruhat()
    size = group.order()
    held = 0
    mismatches = 0
    failing_differs = False
    for wi in range(size):
        w = group.elem_of(wi)
        table = atom_coeffs(group, w)
        for word in group._iter_words_idx(wi):
            dels = group.deleted_word_elements_idx(word)
            for xi in range(size):
                if not (group.bruhat_mask(wi) >> xi) & 1:
                    continue
                x = group.elem_of(xi)
                lam, inc, dec, flags = _flags_idx(group, xi, word, dels)
                if flags[0] or flags[1]:
                    held += 1
                    closed = closed_form_coeff(group, x, word)
                    if closed != table.entries[x]:
                        mismatches += 1
                elif not failing_differs:
                    try:
                        closed = closed_form_coeff(group, x, word, check=False)
                    except DomainError:
                        continue
                    if closed != table.entries[x]:
                        failing_differs = True
    return {
        "condition_triples": held,
        "mismatches": mismatches,
        "failing_triple_differs": failing_differs,
    }
