"""Formula-versus-oracle suites shared by the CLI ``verify`` command."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator

from srestrict import fubini as fu
from srestrict import lonesum as lo
from srestrict import oracle
from srestrict import polybern as pb
from srestrict import riordan as ri
from srestrict import stirling as st
from srestrict.blockset import ALL, TEST_FAMILY

__all__ = ["Mismatch", "SuiteReport", "SUITES", "run_suite"]


@dataclass
class Mismatch:
    check: str
    args: dict
    expected: object
    got: object

    def __str__(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.args.items())
        return f"{self.check}({args}): expected {self.expected}, got {self.got}"


@dataclass
class SuiteReport:
    suite: str
    checks: int = 0
    mismatch: Mismatch | None = None
    routes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.mismatch is None


Case = tuple[str, dict, object, object]


def _stirling_cases(max_n: int, **_) -> Iterator[Case]:
    for name, S in TEST_FAMILY.items():
        for n in range(min(max_n, 9) + 1):
            per_k = oracle.count_partitions(n, S, by_blocks=True)
            for k in range(n + 1):
                args = {"n": n, "k": k, "S": name}
                expect = per_k[k]
                yield "stirling_direct", args, expect, st.stirling_direct(n, k, S)
                yield "stirling_egf", args, expect, st.stirling_egf(n, k, S)
                yield "stirling_rec", args, expect, st.stirling_rec(n, k, S)
        for n in range(min(max_n, 7) + 1):
            for t in range(5):
                yield (
                    "potential_value",
                    {"n": n, "t": t, "S": name},
                    oracle.count_functions(n, t, S),
                    st.potential_value(n, t, S),
                )


def _riordan_cases(max_n: int, **_) -> Iterator[Case]:
    N = min(max_n, 9) + 1
    for name, S in TEST_FAMILY.items():
        if not S.contains(1):
            continue
        M = ri.stirling_matrix(S, N)
        T = ri.inverse(M)
        yield "orthogonality", {"S": name, "N": N}, ri.identity_matrix(N), ri.matmul(M.entries, T)
        for n in range(N):
            yield (
                "row_sum",
                {"S": name, "n": n},
                st.bell_number(n, S),
                sum(M.entries[n]),
            )
            yield (
                "bell_det",
                {"S": name, "n": n},
                st.bell_polynomial(n, S).coeffs,
                ri.bell_det(n, S).coeffs,
            )
    N = min(max_n, 8)
    odd = ri.stirling_matrix(TEST_FAMILY["odd"], N).entries
    yield "odd_product_prefix", {"N": N}, odd, ri.odd_product_prefix(N)


def _fubini_cases(max_n: int, **_) -> Iterator[Case]:
    for name, S in TEST_FAMILY.items():
        for n in range(min(max_n, 8) + 1):
            args = {"n": n, "S": name}
            expect = oracle.count_ordered_partitions(n, S)
            yield "fubini", args, expect, fu.fubini(n, S)
            yield "fubini_egf", args, expect, fu.fubini_egf(n, S)
            for q in range(1, 7):
                yield "poonen", {**args, "q": q}, True, fu.poonen_check(n, q, S)
                yield "congruence", {**args, "q": q}, True, fu.congruence_check(n, q, S)


def _lonesum_cases(max_cells: int, workers: int = 1, **_) -> Iterator[Case]:
    limit = oracle.max_cells()
    if max_cells > limit:
        raise oracle.GuardrailError(f"max_cells {max_cells} exceeds the scan limit {limit}")
    shapes = [
        (n, k) for n in range(max_cells + 1) for k in range(max_cells + 1) if n * k <= max_cells
    ]
    for n, k in shapes:
        scan = oracle.scan_matrices(n, k, workers=workers)
        yield "lonesum_scan", {"n": n, "k": k}, scan.lonesum(), lo.classical_lo(n, k)
        for (n1, S1), (n2, S2) in itertools.product(TEST_FAMILY.items(), repeat=2):
            args = {"n": n, "k": k, "S1": n1, "S2": n2}
            yield (
                "count_restricted",
                args,
                scan.lonesum_restricted(S1, S2, with_zeros=False),
                lo.count_restricted(n, k, S1, S2),
            )
            yield (
                "count_egf_with_zeros",
                args,
                scan.lonesum_restricted(S1, S2, with_zeros=True),
                lo.count_egf(n, k, S1, S2, "with_zeros"),
            )
            yield (
                "decomposable_total",
                args,
                scan.decomposable(S1, S2),
                lo.decomposable_count(n, k, S1, S2),
            )
            for r in range(min(n, k) + 1):
                yield (
                    "decomposable_r",
                    {**args, "r": r},
                    scan.decomposable(S1, S2, r),
                    lo.decomposable_count(n, k, S1, S2, r),
                )


def _polybern_cases(max_n: int, **_) -> Iterator[Case]:
    top = min(max_n, 12)
    for name, S in TEST_FAMILY.items():
        for n in range(top + 1):
            for k in range(-4, 5):
                args = {"n": n, "k": k, "S": name}
                value = pb.poly_bernoulli(n, k, S)
                yield "pb_egf", args, value, pb.pb_egf(n, k, S)
                if k >= 1:
                    yield "pb_iterated_integral", args, value, pb.pb_iterated_integral(n, k, S)
    for n in range(min(max_n, 7) + 1):
        for k in range(min(max_n, 7) + 1):
            yield "brewbaker", {"n": n, "k": k}, lo.classical_lo(n, k), pb.poly_bernoulli(n, -k, ALL)


SUITES: dict[str, tuple[Callable[..., Iterator[Case]], list[str]]] = {
    "stirling": (_stirling_cases, ["direct", "egf", "recurrence", "partition-oracle", "function-oracle"]),
    "riordan": (_riordan_cases, ["riordan-matrix", "forward-substitution", "recurrence"]),
    "fubini": (_fubini_cases, ["sum", "egf", "ordered-partition-oracle"]),
    "lonesum": (_lonesum_cases, ["closed-form", "bivariate-egf", "matrix-scan"]),
    "polybern": (_polybern_cases, ["finite-sum", "polylog-egf", "iterated-integral", "lonesum-count"]),
}


def run_suite(name: str, max_n: int = 9, max_cells: int = 12, workers: int = 1) -> SuiteReport:
    """Run one suite, stopping at the first mismatch."""
    gen, routes = SUITES[name]
    report = SuiteReport(name, routes=list(routes))
    for check, args, expected, got in gen(max_n=max_n, max_cells=max_cells, workers=workers):
        report.checks += 1
        if expected != got:
            report.mismatch = Mismatch(check, args, expected, got)
            break
    return report
