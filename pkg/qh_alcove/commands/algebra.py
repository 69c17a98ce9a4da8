"""Root data, coset and quantum-cohomology commands: ``roots``, ``cosets``, ``qh``."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

import typer

from qh_alcove import output
from qh_alcove.commands._common import (
    budget_option,
    guarded,
    json_option,
    node_index,
    root_system,
    run_config,
)
from qh_alcove.qh import QhEngine, build_engine, format_poly
from qh_alcove.rational import format_rational, format_vector
from qh_alcove.registry import CommandRegistry
from qh_alcove.rootsys import RootSystem, c1_of_parabolic, omega_pairing
from qh_alcove.spec import CliSpec
from qh_alcove.weyl import min_coset_reps, poincare_polynomial


def combination(vec: Sequence[Fraction | int], symbol: str = "α") -> str:
    """``3α1 + 2α2`` from simple-root coordinates."""
    terms: list[str] = []
    for j, c in enumerate(vec):
        if not c:
            continue
        mag = abs(Fraction(c))
        body = f"{symbol}{j + 1}"
        text = body if mag == 1 else f"{format_rational(mag)}{body}"
        if not terms:
            terms.append(text if c > 0 else f"-{text}")
        else:
            terms.append(("+ " if c > 0 else "- ") + text)
    return " ".join(terms) or "0"


def root_table(rs: RootSystem) -> list[dict[str, Any]]:
    rows = []
    for k, beta in enumerate(rs.positive_roots):
        rows.append(
            {
                "index": k + 1,
                "root": list(beta),
                "norm": format_rational(rs.root_norms[k]),
                "coroot": format_vector(rs.coroots[k]),
                "pairings": [
                    format_rational(omega_pairing(rs, i, k)) for i in range(rs.rank)
                ],
            }
        )
    return rows


def register(registry: CommandRegistry, spec: CliSpec) -> None:
    """Register ``roots``, ``cosets`` and the ``qh`` group."""

    @guarded
    def roots(
        group: str = typer.Argument(..., help="Simple type, e.g. G2, A3, su3."),
        json: bool = json_option(),
    ) -> None:
        rs = root_system(group)
        rows = root_table(rs)
        c1 = [c1_of_parabolic(rs, i) for i in range(rs.rank)]
        if json:
            output.emit_json(
                {
                    "group": rs.type_label,
                    "cartan_matrix": [list(r) for r in rs.cartan_matrix],
                    "positive_roots": rows,
                    "highest_root": rs.highest_root + 1,
                    "highest_root_marks": list(rs.highest_root_marks),
                    "fundamental_weights": [format_vector(w) for w in rs.fundamental_weights],
                    "c1": c1,
                }
            )
            return
        output.heading(f"Root system {rs.type_label}")
        cols = ["β", "root", "(β,β)", "h_β"] + [f"h_β(ω{i + 1})" for i in range(rs.rank)]
        table = [
            [
                f"β{row['index']}",
                combination(rs.positive_roots[row["index"] - 1]),
                row["norm"],
                combination(rs.coroots[row["index"] - 1]),
                *row["pairings"],
            ]
            for row in rows
        ]
        output.print_table(cols, table)
        output.detail(f"Highest root: β{rs.highest_root + 1}")
        for i, value in enumerate(c1):
            output.detail(f"c1(G/P_{i + 1}) = {value}")

    @guarded
    def cosets(
        group: str = typer.Argument(..., help="Simple type, e.g. G2."),
        node: int = typer.Option(..., "--node", "-n", help="Maximal parabolic node (1-based)."),
        json: bool = json_option(),
        budget: str | None = budget_option(),
    ) -> None:
        cfg = run_config(spec, json=json, budget=budget)
        rs = root_system(group)
        basis = min_coset_reps(rs, node_index(rs, node), cfg.budget.max_group_order)
        counts = poincare_polynomial(basis)
        records = [
            {
                "index": rep.index,
                "label": f"y_{rep.index}",
                "word": rep.element.word_label(),
                "length": rep.length,
                "dual": basis.dual(rep.index),
                "weight": format_vector(basis.weight(rep.index)),
            }
            for rep in basis
        ]
        if json:
            output.emit_json(
                {"group": rs.type_label, "node": node, "cosets": records, "poincare": counts}
            )
            return
        output.heading(f"W/W_P for {rs.type_label}, node {node}")
        output.print_table(
            ["class", "word", "length", "dual"],
            [
                [r["label"], r["word"], str(r["length"]), f"y_{r['dual']}"]
                for r in records
            ],
        )
        output.detail("Poincaré counts by length: " + ", ".join(str(c) for c in counts))

    registry.add_command(None, "roots", roots, help_text="Root, coroot and pairing tables.")
    registry.add_command(None, "cosets", cosets, help_text="Minimal coset representatives.")

    registry.add_group("qh", help_text="Small quantum cohomology of G/P.")

    @guarded
    def table(
        group: str = typer.Argument(..., help="Simple type, e.g. G2 or A3."),
        node: int = typer.Option(..., "--node", "-n", help="Maximal parabolic node (1-based)."),
        json: bool = json_option(),
        budget: str | None = budget_option(),
    ) -> None:
        cfg = run_config(spec, json=json, budget=budget)
        rs = root_system(group)
        engine = build_engine(rs, node_index(rs, node), cfg.budget.max_group_order)
        products = engine.full_table()
        labels = engine.labels()
        if json:
            output.emit_json(
                {
                    "ring": engine.label,
                    "c1": engine.c1,
                    "classes": labels,
                    "products": [
                        {"left": labels[i], "right": labels[j], "value": prod.to_json(labels)}
                        for (i, j), prod in products.items()
                    ],
                }
            )
            return
        output.heading(f"QH*({engine.label}), c1 = {engine.c1}")
        rows = []
        for i in range(engine.size):
            cells = [
                products[(i, j)].pretty(labels) if j >= i else "" for j in range(engine.size)
            ]
            rows.append([labels[i], *cells])
        output.print_table(["⋆", *labels], rows)

    def _divisor_engine(group: str, node: int, budget: str | None) -> QhEngine:
        cfg = run_config(spec, budget=budget)
        rs = root_system(group)
        return QhEngine(rs, min_coset_reps(rs, node_index(rs, node), cfg.budget.max_group_order))

    @guarded
    def giambelli(
        group: str = typer.Argument(..., help="Simple type, e.g. G2."),
        node: int = typer.Option(..., "--node", "-n", help="Maximal parabolic node (1-based)."),
        json: bool = json_option(),
        budget: str | None = budget_option(),
    ) -> None:
        engine = _divisor_engine(group, node, budget)
        labels = engine.labels()
        polys = {labels[i]: format_poly(p) for i, p in engine.giambelli_polynomials().items()}
        if json:
            output.emit_json({"ring": engine.label, "giambelli": polys})
            return
        output.heading(f"Giambelli expressions in QH*({engine.label})")
        for label, poly in polys.items():
            output.print_text(f"  {label} = {poly}")

    @guarded
    def presentation(
        group: str = typer.Argument(..., help="Simple type, e.g. G2."),
        node: int = typer.Option(..., "--node", "-n", help="Maximal parabolic node (1-based)."),
        json: bool = json_option(),
        budget: str | None = budget_option(),
    ) -> None:
        engine = _divisor_engine(group, node, budget)
        pres = engine.presentation()
        if json:
            output.emit_json(
                {
                    "ring": engine.label,
                    "relation": pres.text(),
                    "degree": pres.degree,
                    "discriminant_at_q1": format_rational(pres.discriminant),
                    "semisimple_at_q1": pres.semisimple_at_q1,
                    "complete": pres.complete,
                }
            )
            return
        output.heading(f"Presentation of QH*({engine.label})")
        output.print_text(f"  {pres.text()}")
        output.detail(f"Discriminant at q = 1: {format_rational(pres.discriminant)}")
        if not pres.complete:
            output.warning(
                "Some codegree has several classes; the relation does not present the ring."
            )

    registry.add_command(
        "qh", "table", table, help_text="Multiplication table of Schubert classes."
    )
    registry.add_command(
        "qh", "giambelli", giambelli, help_text="Classes as polynomials in y_1, q."
    )
    registry.add_command(
        "qh", "presentation", presentation, help_text="Relation y_1^N = f(y_1, q)."
    )
