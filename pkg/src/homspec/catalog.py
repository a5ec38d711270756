"""The eight homogeneous associative submanifolds of S^7 as data.

Each record fixes a frame, an isotropy group and a list of eigenproblems.
Problems with role ``deformation`` add up to the infinitesimal deformation
space; ``lagrangian`` problems are computed for information only.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from .equivariance import FiberRep, adjoint_in_frame, direct_sum, subgroup, trivial_rep
from .operators import (
    A3_FRAME,
    Frame,
    OperatorSpec,
    op_dirac_A3,
    op_dirac_SE,
    op_dirac_sine,
    op_laplacian,
    op_rot,
)
from .results import Cutoff, SolutionSpace
from .scalars import format_rational, parse_rational
from .solver import Problem, solve
from .torus import TORUS, TorusFrame

FRAMEWORKS = ("special-Legendrian", "sine-cone-Lagrangian", "direct-Dirac")
OPERATORS = ("laplacian", "rot", "dirac_A3", "dirac_SE", "dirac_sine")


@dataclass(frozen=True)
class ProblemSpec:
    key: str
    operator: str
    value: Fraction
    fiber: str = "trivial"  # or "adjoint"
    expected: int | None = None
    provenance: str = "reference"  # "reference" (literature value) or "derived"
    role: str = "deformation"  # or "lagrangian"
    manual_cutoff: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", Fraction(self.value))
        if self.operator not in OPERATORS:
            raise ValueError(f"unknown operator {self.operator!r}")
        if self.fiber not in ("trivial", "adjoint"):
            raise ValueError(f"unknown fiber {self.fiber!r}")


@dataclass(frozen=True)
class CaseRecord:
    id: str
    backend: str  # "su2" or "torus"
    p_sq: Fraction | None
    q: Fraction | None
    gamma: str
    framework: str
    trivial_dim: int
    problems: tuple[ProblemSpec, ...]
    description: str = ""
    notes: tuple[str, ...] = ()
    pgl_terms: tuple[int, ...] = ()

    @property
    def frame(self) -> Frame | TorusFrame:
        if self.backend == "torus":
            return TORUS
        return Frame(self.p_sq, self.q, self.id)

    def problem(self, key: str) -> ProblemSpec:
        for p in self.problems:
            if p.key == key:
                return p
        raise KeyError(f"case {self.id} has no problem {key!r}; available: {[p.key for p in self.problems]}")


# rot v = 3v in the frame's own orientation, and with the orientation reversed
_LAGRANGIAN = (
    ProblemSpec("lagrangian", "rot", 3, fiber="adjoint", provenance="derived", role="lagrangian"),
    ProblemSpec("lagrangian_reversed", "rot", -3, fiber="adjoint", provenance="derived", role="lagrangian"),
)


def _f(x: str) -> Fraction:
    return Fraction(x)


CASES: dict[str, CaseRecord] = {
    c.id: c
    for c in (
        CaseRecord(
            "A1", "torus", None, None, "trivial", "special-Legendrian", 18,
            (
                ProblemSpec("laplacian", "laplacian", 8, expected=12),
                ProblemSpec("rot", "rot", -2, fiber="adjoint", expected=6),
            ),
            "flat torus T^3",
        ),
        CaseRecord(
            "A2", "su2", _f("1/3"), _f("1/3"), "Z3", "special-Legendrian", 17,
            (
                ProblemSpec("laplacian", "laplacian", 8, expected=19),
                ProblemSpec("rot", "rot", -2, fiber="adjoint", expected=11),
            ),
            "SU(2)/Z3",
            ("PGL(4,C) orbit count 30 - 6 - 15 + 4 = 13", "unobstructedness is not computed here"),
            (30, -6, -15, 4),
        ),
        CaseRecord(
            "A3", "su2", _f("1/7"), _f("1"), "trivial", "direct-Dirac", 18,
            (ProblemSpec("dirac", "dirac_A3", -1, expected=34),),
            "SU(2) with the A3 frame",
            ("a 16-dimensional remainder may contain nontrivial deformations",),
        ),
        CaseRecord(
            "S3", "su2", _f("1"), _f("1"), "trivial", "sine-cone-Lagrangian", 4,
            (
                ProblemSpec("laplacian", "laplacian", 3, expected=4),
                *_LAGRANGIAN,
            ),
            "totally geodesic S^3",
            ("budget 12 - 8: associative deformations minus Lagrangian ones",),
        ),
        CaseRecord(
            "L1", "su2", _f("3/8"), _f("3/2"), "trivial", "sine-cone-Lagrangian", 7,
            (
                ProblemSpec("laplacian", "laplacian", 3, expected=7),
                *_LAGRANGIAN,
            ),
            "SU(2)",
        ),
        CaseRecord(
            "L2", "su2", _f("1/2"), _f("1/2"), "Z2", "sine-cone-Lagrangian", 6,
            (
                ProblemSpec("laplacian", "laplacian", 3, expected=6),
                *_LAGRANGIAN,
            ),
            "SO(3) = SU(2)/Z2",
        ),
        CaseRecord(
            "L3", "su2", _f("1/16"), _f("1/4"), "A4star", "sine-cone-Lagrangian", 7,
            (
                ProblemSpec("laplacian", "laplacian", 3, expected=7),
                *_LAGRANGIAN,
            ),
            "SU(2)/A4*",
        ),
        CaseRecord(
            "L4", "su2", _f("1/6"), _f("1/6"), "D3star", "sine-cone-Lagrangian", 7,
            (
                ProblemSpec("laplacian", "laplacian", 3, expected=7),
                *_LAGRANGIAN,
            ),
            "SU(2)/D3*",
        ),
    )
}

CASE_IDS = tuple(CASES)


# -- problem construction ----------------------------------------------------


def build_operator(kind: str, frame: Frame | TorusFrame) -> OperatorSpec:
    if kind == "laplacian":
        return op_laplacian(frame)
    if kind == "rot":
        return op_rot(frame)
    if kind == "dirac_A3":
        return op_dirac_A3()
    if kind == "dirac_SE":
        return op_dirac_SE(frame)
    if kind == "dirac_sine":
        return op_dirac_sine(frame)
    raise ValueError(f"unknown operator {kind!r}")


def build_fiber(kind: str, d: int, frame: Frame | TorusFrame) -> FiberRep:
    """``adjoint`` means Ad on vector fields, plus a trivial summand for (v, f) pairs."""
    if kind == "adjoint" and isinstance(frame, Frame):
        if d == 3:
            return adjoint_in_frame(frame)
        if d == 4:
            return direct_sum(adjoint_in_frame(frame), trivial_rep(1))
        raise ValueError(f"no adjoint fiber of dimension {d}")
    return trivial_rep(d)


def build_problem(case: CaseRecord, spec: ProblemSpec, cutoff: Cutoff | None = None) -> Problem:
    frame = A3_FRAME if spec.operator == "dirac_A3" else case.frame
    op = build_operator(spec.operator, frame)
    if cutoff is None and spec.manual_cutoff is not None:
        cutoff = Cutoff.manual(spec.manual_cutoff)
    return Problem(frame, op, spec.value, subgroup(case.gamma), build_fiber(spec.fiber, op.d_in, frame), cutoff)


# -- running -------------------------------------------------------------------


@dataclass
class ProblemResult:
    case: str
    spec: ProblemSpec
    space: SolutionSpace
    oracle_match: bool | None = None

    @property
    def match(self) -> bool | None:
        if self.spec.expected is None:
            return None
        return self.space.real_dim == self.spec.expected

    def to_dict(self) -> dict:
        s = self.space
        out = {
            "case": self.case,
            "problem": self.spec.key,
            "alpha": format_rational(self.spec.value),
            "cutoff": {"n_max": s.cutoff.n_max, "certified": s.cutoff.certified},
            "blocks": [
                {"n": _key(b.key), "nullity": b.nullity, "multiplicity": b.multiplicity} for b in s.blocks
            ],
            "complex_dim": s.complex_dim,
            "real_dim": s.real_dim,
            "expected": self.spec.expected,
            "match": self.match,
        }
        if self.oracle_match is not None:
            out["oracle"] = self.oracle_match
        return out


def _key(k):
    return list(k) if isinstance(k, tuple) else k


@dataclass
class CaseResult:
    record: CaseRecord
    results: list[ProblemResult] = field(default_factory=list)

    @property
    def all_match(self) -> bool:
        return all(r.match is not False for r in self.results)

    @property
    def deformation_total(self) -> int:
        return sum(r.space.real_dim for r in self.results if r.spec.role == "deformation")


def oracle_agrees(problem: Problem, space: SolutionSpace) -> bool:
    from . import oracle

    if problem.is_torus:
        keys = [b.key for b in space.blocks]
        got = oracle.torus_oracle_nullities(problem.operator, problem.alpha, keys)
        return all(got[k] == b.nullity for k, b in zip(keys, space.blocks))
    got = oracle.oracle_nullities(problem, space.cutoff.n_max)
    return got == space.nullities()


def run_problem(case_id: str, key: str, workers: int = 1, cutoff: Cutoff | None = None, with_oracle: bool = False) -> ProblemResult:
    case = CASES[case_id]
    spec = case.problem(key)
    prob = build_problem(case, spec, cutoff)
    space = solve(prob, workers=workers)
    res = ProblemResult(case_id, spec, space)
    if with_oracle:
        res.oracle_match = oracle_agrees(prob, space)
    return res


def run_case(case_id: str, include_derived: bool = True, workers: int = 1, with_oracle: bool = False) -> CaseResult:
    if case_id not in CASES:
        raise KeyError(f"unknown case {case_id!r}; expected one of {list(CASES)}")
    case = CASES[case_id]
    out = CaseResult(case)
    for spec in case.problems:
        if spec.provenance == "derived" and not include_derived:
            continue
        out.results.append(run_problem(case_id, spec.key, workers, with_oracle=with_oracle))
    return out


# -- report ----------------------------------------------------------------------


@dataclass(frozen=True)
class ReportRow:
    case: str
    framework: str
    total: int
    trivial: int
    remainder: int
    verdict: str
    match: bool
    lagrangian: tuple[int, ...] = ()
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        d = asdict(self)
        d["notes"] = list(self.notes)
        d["lagrangian"] = list(self.lagrangian)
        return d


def verdict(framework: str, remainder: int) -> str:
    if framework == "sine-cone-Lagrangian":
        return "non-Lagrangian deformations trivial" if remainder == 0 else "nontrivial non-Lagrangian deformations"
    return "rigid" if remainder == 0 else "not rigid"


def report_row(result: CaseResult) -> ReportRow:
    rec = result.record
    total = result.deformation_total
    remainder = total - rec.trivial_dim
    if remainder < 0:
        raise ArithmeticError(f"{rec.id}: deformation space smaller than its trivial part")
    if rec.pgl_terms and sum(rec.pgl_terms) != remainder:
        raise ArithmeticError(f"{rec.id}: remainder {remainder} disagrees with {rec.pgl_terms}")
    lag = tuple(r.space.real_dim for r in result.results if r.spec.role == "lagrangian")
    return ReportRow(
        rec.id, rec.framework, total, rec.trivial_dim, remainder,
        verdict(rec.framework, remainder), result.all_match, lag, rec.notes,
    )


def rigidity_report(case_ids: tuple[str, ...] | None = None, include_derived: bool = True, workers: int = 1) -> list[ReportRow]:
    return [report_row(run_case(c, include_derived, workers)) for c in (case_ids or CASE_IDS)]


# -- JSON case files ---------------------------------------------------------------


def case_to_json(case: CaseRecord) -> dict:
    return {
        "id": case.id,
        "backend": case.backend,
        "p_sq": None if case.p_sq is None else format_rational(case.p_sq),
        "q": None if case.q is None else format_rational(case.q),
        "gamma": case.gamma,
        "framework": case.framework,
        "trivial_dim": case.trivial_dim,
        "description": case.description,
        "notes": list(case.notes),
        "pgl_terms": list(case.pgl_terms),
        "problems": [
            {
                "key": p.key,
                "operator": p.operator,
                "value": format_rational(p.value),
                "fiber": p.fiber,
                "expected": p.expected,
                "provenance": p.provenance,
                "role": p.role,
                "manual_cutoff": p.manual_cutoff,
            }
            for p in case.problems
        ],
    }


def case_from_json(data: dict) -> CaseRecord:
    try:
        backend = data["backend"]
        if backend not in ("su2", "torus"):
            raise ValueError(f"unknown backend {backend!r}")
        if data.get("framework") not in FRAMEWORKS:
            raise ValueError(f"unknown framework {data.get('framework')!r}")
        p_sq = None if data.get("p_sq") is None else parse_rational(data["p_sq"])
        q = None if data.get("q") is None else parse_rational(data["q"])
        if backend == "su2" and (p_sq is None or q is None):
            raise ValueError("su2 cases need p_sq and q")
        problems = tuple(
            ProblemSpec(
                p["key"], p["operator"], parse_rational(str(p["value"])), p.get("fiber", "trivial"),
                p.get("expected"), p.get("provenance", "reference"), p.get("role", "deformation"), p.get("manual_cutoff"),
            )
            for p in data["problems"]
        )
        return CaseRecord(
            data["id"], backend, p_sq, q, data.get("gamma", "trivial"), data["framework"], int(data["trivial_dim"]),
            problems, data.get("description", ""), tuple(data.get("notes", ())), tuple(data.get("pgl_terms", ())),
        )
    except KeyError as exc:
        raise ValueError(f"case file entry is missing field {exc}") from exc


def export_cases(path: str | Path | None = None) -> str:
    text = json.dumps({"cases": [case_to_json(c) for c in CASES.values()]}, indent=2)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def load_cases(path: str | Path) -> dict[str, CaseRecord]:
    data = json.loads(Path(path).read_text())
    entries = data["cases"] if isinstance(data, dict) else data
    return {c.id: c for c in map(case_from_json, entries)}


def register_cases(cases: dict[str, CaseRecord]) -> None:
    """Add or replace catalog entries (used by --cases-file)."""
    global CASE_IDS
    CASES.update(cases)
    CASE_IDS = tuple(CASES)
