"""Genus-by-genus statistics tables with exact tallies.

Two table kinds are produced over full genus populations:

  * "lgm": per genus and per q, the portion of semigroups whose
    multiplicity bound and set-difference bound coincide, next to the
    portion satisfying the simpler test q <= floor(q/l1)*l2.
  * "gmgens": per genus, means and portions of generators falling
    under the 2*l1 - 1 cutoff.

Every tally is an exact integer or Fraction; rendering to two decimals
(rounding half away from zero) is the only lossy step.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from importlib import resources
from typing import NamedTuple

from .bounds import coincidence_criterion, gm_generic, lewittes_bound
from .enumeration import (
    DEFAULT_NODE_BUDGET,
    enumerate_genus,
    map_reduce_genus,
    tuple_add,
)
from .errors import ResourceLimit

__all__ = [
    "Portion",
    "LgmTableRow",
    "GmGenTableRow",
    "render_percent",
    "render_fixed2",
    "format_percent_cell",
    "build_lgm_table",
    "build_gmgen_table",
    "lgm_csv",
    "gmgen_csv",
    "lgm_json",
    "gmgen_json",
    "lgm_text",
    "gmgen_text",
    "compare_tables",
    "load_reference",
    "selfcheck_lgm",
]


def render_fixed2(num: int, den: int) -> str:
    """num/den to exactly two decimals, rounding half away from zero."""
    if den <= 0 or num < 0:
        raise ValueError("expected num >= 0 and den > 0")
    q, r = divmod(num * 100, den)
    if 2 * r >= den:
        q += 1
    return f"{q // 100}.{q % 100:02d}"


def render_percent(num: int, den: int) -> str:
    """100*num/den to two decimals, exact integer rounding throughout."""
    if not 0 <= num <= den:
        raise ValueError("expected 0 <= num <= den")
    return render_fixed2(100 * num, den)


def format_percent_cell(num: int, den: int) -> str:
    """Table cell: exact 100% renders bare as "100", else two decimals."""
    return "100" if num == den else render_percent(num, den)


class Portion(NamedTuple):
    num: int
    den: int
    percent: str


def _portion(num: int, den: int) -> Portion:
    return Portion(num, den, render_percent(num, den))


@dataclass(frozen=True)
class LgmTableRow:
    genus: int
    population: int
    per_q_coincide: dict[int, Portion]
    per_q_sufficient: dict[int, Portion]


@dataclass(frozen=True)
class GmGenTableRow:
    genus: int
    population: int
    gm_gen_total: int
    non_gm_gen_total: int
    portion_non_sum: Fraction  # sum over semigroups of non-gm/total

    @property
    def mean_gm_gens(self) -> str:
        return render_fixed2(self.gm_gen_total, self.population)

    @property
    def mean_non_gm_gens(self) -> str:
        return render_fixed2(self.non_gm_gen_total, self.population)

    @property
    def gen_total(self) -> int:
        return self.gm_gen_total + self.non_gm_gen_total

    @property
    def portion_gm_total(self) -> str:
        return render_percent(self.gm_gen_total, self.gen_total)

    @property
    def portion_non_gm_total(self) -> str:
        return render_percent(self.non_gm_gen_total, self.gen_total)

    @property
    def mean_portion_non_gm(self) -> Fraction:
        return self.portion_non_sum / self.population

    @property
    def mean_portion_non_gm_percent(self) -> str:
        f = self.mean_portion_non_gm
        return render_fixed2(100 * f.numerator, f.denominator)


def _lgm_leaf(q_list, S):
    gens = S.min_generators
    l1 = gens[0]
    out = [1]
    for q in q_list:
        out.append(1 if coincidence_criterion(S, q) else 0)
    for q in q_list:
        out.append(1 if len(gens) >= 2 and q <= (q // l1) * gens[1] else 0)
    return tuple(out)


def _gmgen_leaf(S):
    gens = S.min_generators
    cutoff = 2 * gens[0] - 1
    n_gm = sum(1 for g in gens if g < cutoff)
    n_total = len(gens)
    return (1, n_gm, n_total - n_gm, Fraction(n_total - n_gm, n_total))


def build_lgm_table(genus_range, q_list, *, workers: int = 1,
                    node_budget: int | None = None) -> list[LgmTableRow]:
    """Coincidence and sufficient-condition portions per genus and q."""
    q_list = tuple(q_list)
    if not q_list:
        raise ValueError("q_list must not be empty")
    budget = node_budget if node_budget is not None else DEFAULT_NODE_BUDGET
    zero = (0,) * (1 + 2 * len(q_list))
    rows: list[LgmTableRow] = []
    for g in genus_range:
        try:
            acc, nodes = map_reduce_genus(g, partial(_lgm_leaf, q_list), zero,
                                          workers=workers, node_budget=budget)
        except ResourceLimit:
            raise ResourceLimit(f"node budget exhausted while computing genus {g}",
                                partial=rows) from None
        budget -= nodes
        population = acc[0]
        k = len(q_list)
        coincide = {q: _portion(acc[1 + i], population) for i, q in enumerate(q_list)}
        sufficient = {q: _portion(acc[1 + k + i], population) for i, q in enumerate(q_list)}
        rows.append(LgmTableRow(g, population, coincide, sufficient))
    return rows


def build_gmgen_table(genus_range, *, workers: int = 1,
                      node_budget: int | None = None) -> list[GmGenTableRow]:
    """Generator-classification means and portions per genus."""
    budget = node_budget if node_budget is not None else DEFAULT_NODE_BUDGET
    zero = (0, 0, 0, Fraction(0))
    rows: list[GmGenTableRow] = []
    for g in genus_range:
        try:
            acc, nodes = map_reduce_genus(g, _gmgen_leaf, zero,
                                          workers=workers, node_budget=budget)
        except ResourceLimit:
            raise ResourceLimit(f"node budget exhausted while computing genus {g}",
                                partial=rows) from None
        budget -= nodes
        rows.append(GmGenTableRow(g, acc[0], acc[1], acc[2], acc[3]))
    return rows


# ---------------------------------------------------------------------------
# rendering

def _lgm_header(q_list) -> list[str]:
    return (["genus"]
            + [f"Lewittes = Geil-Matsumoto (q={q})" for q in q_list]
            + [f"q <= floor(q/l1)*l2 (q={q})" for q in q_list])


def _lgm_cells(row: LgmTableRow, q_list) -> list[str]:
    return ([str(row.genus)]
            + [format_percent_cell(row.per_q_coincide[q].num, row.per_q_coincide[q].den)
               for q in q_list]
            + [format_percent_cell(row.per_q_sufficient[q].num, row.per_q_sufficient[q].den)
               for q in q_list])


GMGEN_HEADER = ["genus", "mean GM generators", "mean non-GM generators",
                "GM generators / total", "non-GM generators / total",
                "mean portion non-GM"]


def _gmgen_cells(row: GmGenTableRow) -> list[str]:
    return [str(row.genus), row.mean_gm_gens, row.mean_non_gm_gens,
            format_percent_cell(row.gm_gen_total, row.gen_total),
            format_percent_cell(row.non_gm_gen_total, row.gen_total),
            row.mean_portion_non_gm_percent]


def lgm_csv(rows, q_list) -> str:
    lines = [",".join(_lgm_header(q_list))]
    lines += [",".join(_lgm_cells(r, q_list)) for r in rows]
    return "\n".join(lines) + "\n"


def gmgen_csv(rows) -> str:
    lines = [",".join(GMGEN_HEADER)]
    lines += [",".join(_gmgen_cells(r)) for r in rows]
    return "\n".join(lines) + "\n"


def _text_table(header: list[str], body: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in body)) if body else len(h)
              for i, h in enumerate(header)]
    def fmt(cells):
        return "  ".join(c.rjust(w) for c, w in zip(cells, widths))
    return "\n".join([fmt(header)] + [fmt(r) for r in body]) + "\n"


def lgm_text(rows, q_list) -> str:
    header = (["genus"] + [f"coincide q={q}" for q in q_list]
              + [f"sufficient q={q}" for q in q_list])
    return _text_table(header, [_lgm_cells(r, q_list) for r in rows])


def gmgen_text(rows) -> str:
    return _text_table(GMGEN_HEADER, [_gmgen_cells(r) for r in rows])


def lgm_json(rows, q_list) -> dict:
    return {
        "table": "lgm",
        "q": list(q_list),
        "rows": [
            {
                "genus": r.genus,
                "population": r.population,
                "coincide": {str(q): {"count": p.num, "total": p.den,
                                      "percent": format_percent_cell(p.num, p.den)}
                             for q, p in r.per_q_coincide.items()},
                "sufficient": {str(q): {"count": p.num, "total": p.den,
                                        "percent": format_percent_cell(p.num, p.den)}
                               for q, p in r.per_q_sufficient.items()},
            }
            for r in rows
        ],
    }


def gmgen_json(rows) -> dict:
    return {
        "table": "gmgens",
        "rows": [
            {
                "genus": r.genus,
                "population": r.population,
                "gm_generators": r.gm_gen_total,
                "non_gm_generators": r.non_gm_gen_total,
                "mean_gm": r.mean_gm_gens,
                "mean_non_gm": r.mean_non_gm_gens,
                "portion_gm": format_percent_cell(r.gm_gen_total, r.gen_total),
                "portion_non_gm": format_percent_cell(r.non_gm_gen_total, r.gen_total),
                "mean_portion_non_gm": {
                    "num": r.mean_portion_non_gm.numerator,
                    "den": r.mean_portion_non_gm.denominator,
                    "percent": r.mean_portion_non_gm_percent,
                },
            }
            for r in rows
        ],
    }


# ---------------------------------------------------------------------------
# reference comparison

def _scaled100(cell: str) -> int:
    # "42.86" -> 4286, "100" -> 10000, "1.5" -> 150
    if "." in cell:
        whole, frac = cell.split(".", 1)
        return int(whole) * 100 + int(frac.ljust(2, "0")[:2])
    return int(cell) * 100


def _parse_table_csv(text: str):
    lines = [ln for ln in text.strip().split("\n") if ln]
    header = lines[0].split(",")
    by_genus = {}
    for ln in lines[1:]:
        cells = ln.split(",")
        by_genus[int(cells[0])] = dict(zip(header[1:], cells[1:]))
    return header, by_genus


def compare_tables(computed_csv: str, reference_csv: str):
    """Cell-by-cell comparison, one final-digit ulp of tolerance.

    Only rows and columns present in both tables are compared.  Returns
    (cells_compared, deviations) where each deviation is a
    (genus, column, computed, reference) tuple.
    """
    _, got = _parse_table_csv(computed_csv)
    _, want = _parse_table_csv(reference_csv)
    compared = 0
    deviations = []
    for genus in sorted(set(got) & set(want)):
        for col in got[genus]:
            if col not in want[genus]:
                continue
            compared += 1
            a, b = got[genus][col], want[genus][col]
            if abs(_scaled100(a) - _scaled100(b)) > 1:
                deviations.append((genus, col, a, b))
    return compared, deviations


def load_reference(kind: str) -> str:
    """Bundled reference CSV for a table kind ("lgm" or "gmgens")."""
    name = {"lgm": "reference_lgm.csv", "gmgens": "reference_gmgens.csv"}[kind]
    return resources.files("nsgbounds").joinpath("data", name).read_text(encoding="utf-8")


def selfcheck_lgm(genus_range, q_list, sample_rate: float = 0.01, seed: int = 0):
    """Re-verify sampled coincidence flags by full set-difference scans.

    Draws a seeded sample of each genus population and compares the
    generator criterion against an actual gm == lewittes comparison.
    Returns (checked, mismatches).
    """
    rng = random.Random(seed)
    checked = 0
    mismatches = []
    q_list = tuple(q_list)

    for g in genus_range:
        def visit(S):
            nonlocal checked
            if rng.random() >= sample_rate:
                return
            checked += 1
            for q in q_list:
                crit = coincidence_criterion(S, q)
                full = gm_generic(S, q) == lewittes_bound(S, q)
                if crit != full:
                    mismatches.append((g, q, S.min_generators))
        enumerate_genus(g, visit)
    return checked, mismatches
