"""End-to-end analysis of one permutation group."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import IrreducibleCubicOrWorse, NonCommutative, NonIntegerMultiplicity
from .exactalg import format_quadratic
from .permcore import GroupData, enumerate_group, is_primitive_blocks, orbital_decomposition
from .scheme import (
    EigenvalueTable,
    IntersectionTensor,
    OrbitalDecomposition,
    TraceReport,
    connectivity_primitive,
    eigentable,
    intersection_tensor,
    perron_frobenius_check,
    table_to_json,
    table_to_tsv,
    verify_trace_identities,
)


@dataclass
class AnalysisReport:
    name: str
    order: int
    od: OrbitalDecomposition
    tensor: IntersectionTensor
    traces: TraceReport
    tensor_failures: list[str]
    table: EigenvalueTable | None
    table_error: str | None
    relation_failures: list[str] = field(default_factory=list)
    primitive_blocks: bool = False
    primitive_connectivity: bool = False
    perron_frobenius: list[bool] | None = None

    @property
    def ok(self) -> bool:
        """All identities hold and both primitivity criteria agree."""
        return (
            self.traces.passed
            and not self.tensor_failures
            and not self.relation_failures
            and self.primitive_blocks == self.primitive_connectivity
            and (self.perron_frobenius is None or not self.primitive_blocks or all(self.perron_frobenius))
        )

    def to_json(self) -> dict:
        r = self.od.r
        return {
            "name": self.name,
            "degree": self.od.n,
            "order": self.order,
            "rank": r,
            "subdegrees": list(self.od.subdegrees),
            "pairing": list(self.od.pairing),
            "intersection_numbers": [[[self.tensor[i, j, k] for k in range(r)] for j in range(r)] for i in range(r)],
            "trace_identities": {"passed": self.traces.passed, "checked": self.traces.checked,
                                 "failures": list(self.traces.failures)},
            "tensor_failures": self.tensor_failures,
            "eigentable": table_to_json(self.table) if self.table else None,
            "eigentable_error": self.table_error,
            "relation_failures": self.relation_failures,
            "primitive": {"blocks": self.primitive_blocks, "connectivity": self.primitive_connectivity},
            "perron_frobenius": self.perron_frobenius,
        }

    def to_tsv(self) -> str:
        r = self.od.r
        lines = [
            f"name\t{self.name}",
            f"degree\t{self.od.n}",
            f"order\t{self.order}",
            f"rank\t{r}",
            "subdegrees\t" + "\t".join(map(str, self.od.subdegrees)),
            "pairing\t" + "\t".join(map(str, self.od.pairing)),
            f"primitive_blocks\t{self.primitive_blocks}",
            f"primitive_connectivity\t{self.primitive_connectivity}",
            f"trace_identities\t{'pass' if self.traces.passed else 'FAIL'}\t{self.traces.checked}",
        ]
        for f in self.traces.failures + self.tensor_failures + self.relation_failures:
            lines.append(f"failure\t{f}")
        for i in range(r):
            for j in range(r):
                lines.append(f"a[{i}][{j}]\t" + "\t".join(str(self.tensor[i, j, k]) for k in range(r)))
        if self.table is not None:
            lines.append("# eigentable")
            lines.extend(table_to_tsv(self.table).rstrip("\n").split("\n"))
            lines.append("perron_frobenius\t" + "\t".join(str(x) for x in self.perron_frobenius))
        else:
            lines.append(f"eigentable_error\t{self.table_error}")
        return "\n".join(lines) + "\n"


def analyze_group(g: GroupData, name: str = "group") -> AnalysisReport:
    g = enumerate_group(g)
    od = orbital_decomposition(g)
    tensor = intersection_tensor(od)
    traces = verify_trace_identities(od, tensor)
    tensor_failures = tensor.invariant_failures(associativity=True)
    table, err, rel, pf = None, None, [], None
    try:
        table = eigentable(od, tensor)
    except (NonCommutative, NonIntegerMultiplicity, IrreducibleCubicOrWorse) as exc:
        # diagnostics about the scheme, not failures of the computation
        err = f"{type(exc).__name__}: {exc}"
    if table is not None:
        rel = table.relation_failures(tensor)
        pf = [perron_frobenius_check(table.row(i), od.subdegrees[i]) if od.subdegrees[i] > 1 else False
              for i in range(1, od.r)]
    return AnalysisReport(
        name, g.order, od, tensor, traces, tensor_failures, table, err, rel,
        is_primitive_blocks(g), connectivity_primitive(od), pf,
    )


def describe_row(row) -> str:
    return ", ".join(format_quadratic(v) for v in row)
