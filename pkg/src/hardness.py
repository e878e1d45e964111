"""3SAT to MinGMConn gadget compiler.

A formula with n variables and m clauses becomes a strict instance whose
non-SC demands are vertically separable, number ``alpha = 12m + 4n``, and
can be satisfied with ``alpha`` points exactly when the formula is
satisfiable. The layout (built on exact fractions, then rank-compressed to
integers) is:

* the start point ``S`` at the bottom-left;
* variable gadgets along a descending diagonal, each holding ``x_i``, the
  demand point ``d_i``, the literal points ``x_i+`` / ``x_i-`` just inside
  R(x_i, d_i) near its top-left / bottom-right corners, and one connector per
  literal occurrence on a short descending diagonal at the top-right,
  positive connectors above ``d_i`` and negative ones below;
* clause gadgets along a descending diagonal, above and to the right of all
  variable gadgets, each holding three literal points (positive above
  negative) and the clause point ``c_j`` at the top-right;
* one connection point per literal occurrence: positive paths go up then
  right, negative paths right then up.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from src.bounds import greedy_vs_certificate
from src.errors import InstanceError
from src.geometry import Demand, Instance, Point, Rect, Solution, XY, is_strict
from src.verifier import ManhattanIndex, VsCertificate, verify_vs_certificate

logger = logging.getLogger(__name__)

Literal = int
Assignment = Union[Sequence[bool], Mapping[int, bool]]

_VAR_MARGIN = 1
_CLAUSE_SIZE = 5
_LITERAL_SLOTS = ((1, 3), (2, 2), (3, 1))
_CLAUSE_CORNER = (4, 4)


@dataclass(frozen=True)
class CnfFormula:
    """3-CNF formula over variables 1..n; literal -i negates variable i."""

    num_vars: int
    clauses: Tuple[Tuple[Literal, Literal, Literal], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        if self.num_vars < 1:
            raise InstanceError(f"formula needs at least one variable, got {self.num_vars}", field="n")
        for j, clause in enumerate(self.clauses):
            if len(clause) != 3:
                raise InstanceError(f"clause {j + 1} has {len(clause)} literals, expected 3", field="clauses")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise InstanceError(f"clause {j + 1}: literal {lit} out of range", field="clauses")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def repeated_literals(self) -> List[int]:
        """1-based indices of clauses that mention a variable more than once."""
        return [j + 1 for j, c in enumerate(self.clauses) if len({abs(l) for l in c}) < 3]


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF. Every clause must have exactly three literals.

    Raises:
        InstanceError: On a missing or malformed header, or a clause that is
            not a 3-clause.
    """
    num_vars: Optional[int] = None
    expected: Optional[int] = None
    tokens: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InstanceError(f"line {lineno}: malformed header {line!r}", field="dimacs")
            try:
                num_vars, expected = int(parts[2]), int(parts[3])
            except ValueError as exc:
                raise InstanceError(f"line {lineno}: malformed header {line!r}", field="dimacs") from exc
            continue
        if num_vars is None:
            raise InstanceError(f"line {lineno}: clause before the 'p cnf' header", field="dimacs")
        try:
            tokens.extend(int(tok) for tok in line.split())
        except ValueError as exc:
            raise InstanceError(f"line {lineno}: not an integer literal", field="dimacs") from exc
    if num_vars is None:
        raise InstanceError("missing 'p cnf' header", field="dimacs")

    clauses: List[Tuple[int, ...]] = []
    current: List[int] = []
    for tok in tokens:
        if tok == 0:
            if len(current) != 3:
                raise InstanceError(
                    f"clause {len(clauses) + 1} has {len(current)} literals, expected 3", field="dimacs"
                )
            clauses.append(tuple(current))
            current = []
        else:
            current.append(tok)
    if current:
        raise InstanceError("last clause is not terminated by 0", field="dimacs")
    if expected is not None and expected != len(clauses):
        logger.warning("header announces %d clauses, found %d", expected, len(clauses))
    return CnfFormula(num_vars, tuple(clauses))


def load_dimacs(path: Union[str, Path]) -> CnfFormula:
    return parse_dimacs(Path(path).read_text(encoding="utf-8"))


def _value(assignment: Assignment, var: int, n: int) -> bool:
    if isinstance(assignment, Mapping):
        if var not in assignment:
            raise InstanceError(f"assignment misses variable {var}", field="assignment")
        return bool(assignment[var])
    if len(assignment) != n:
        raise InstanceError(f"assignment has {len(assignment)} values for {n} variables", field="assignment")
    return bool(assignment[var - 1])


def literal_true(lit: Literal, assignment: Assignment, n: int) -> bool:
    value = _value(assignment, abs(lit), n)
    return value if lit > 0 else not value


def evaluate(formula: CnfFormula, assignment: Assignment) -> bool:
    return all(
        any(literal_true(l, assignment, formula.num_vars) for l in clause) for clause in formula.clauses
    )


def satisfying_assignments(formula: CnfFormula) -> List[Tuple[bool, ...]]:
    """Every satisfying assignment, by brute force."""
    return [
        values
        for values in product((False, True), repeat=formula.num_vars)
        if evaluate(formula, values)
    ]


def random_formula(num_vars: int, num_clauses: int, seed: int) -> CnfFormula:
    """Uniform random 3-CNF; variables in a clause are distinct when n >= 3."""
    if num_vars < 1 or num_clauses < 0:
        raise InstanceError("need n >= 1 and m >= 0", field="formula")
    rng = random.Random(seed)
    clauses = []
    for _ in range(num_clauses):
        if num_vars >= 3:
            variables = rng.sample(range(1, num_vars + 1), 3)
        else:
            variables = [rng.randint(1, num_vars) for _ in range(3)]
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in variables))
    return CnfFormula(num_vars, tuple(clauses))


class Role(str, Enum):
    START = "start"
    CLAUSE = "clause"
    CLAUSE_LITERAL = "clause-literal"
    VARIABLE = "variable"
    VARIABLE_LITERAL = "variable-literal"
    DEMAND_POINT = "demand-point"
    CONNECTOR = "connector"
    CONNECTION = "connection"


class DemandRole(str, Enum):
    SC = "sc"
    SX = "sx"
    XD = "xd"
    VARIABLE = "variable"
    CLAUSE = "clause"
    CONNECTION = "connection"


@dataclass(frozen=True)
class Occurrence:
    """Literal k (0-based) of clause j (1-based) on variable ``var``."""

    clause: int
    position: int
    var: int
    positive: bool

    @property
    def sign(self) -> str:
        return "+" if self.positive else "-"

    @property
    def literal_id(self) -> str:
        return f"l{self.clause}.{self.position}"

    @property
    def connection_id(self) -> str:
        return f"p{self.var}.{self.clause}.{self.position}{self.sign}"


@dataclass
class GadgetInstance:
    """Compiled formula: instance, threshold, roles and a separability certificate."""

    formula: CnfFormula
    instance: Instance
    alpha: int
    roles: Dict[str, Role]
    gadget: Dict[str, str]
    demand_roles: Dict[Tuple[str, str], DemandRole]
    certificate: VsCertificate
    connectors: Dict[Occurrence, str] = field(default_factory=dict)

    def demands_with(self, *roles: DemandRole) -> List[Demand]:
        wanted = set(roles)
        return [d for d in self.instance.demands if self.demand_roles[d.ids()] in wanted]

    @property
    def sc_demands(self) -> List[Demand]:
        return self.demands_with(DemandRole.SC)

    @property
    def non_sc_demands(self) -> List[Demand]:
        return [d for d in self.instance.demands if self.demand_roles[d.ids()] is not DemandRole.SC]


def occurrences(formula: CnfFormula) -> List[Occurrence]:
    return [
        Occurrence(j, k, abs(lit), lit > 0)
        for j, clause in enumerate(formula.clauses, start=1)
        for k, lit in enumerate(clause)
    ]


class _Layout:
    """Fractional positions before rank compression."""

    def __init__(self, formula: CnfFormula):
        self.formula = formula
        n, m = formula.num_vars, formula.num_clauses
        self.var_size = 3 * m + 4
        self.pos: Dict[str, Tuple[Fraction, Fraction]] = {}
        self.roles: Dict[str, Role] = {}
        self.gadget: Dict[str, str] = {}
        self.demands: List[Tuple[str, str, DemandRole]] = []
        self.connectors: Dict[Occurrence, str] = {}
        self.occurrences = occurrences(formula)
        self._place("S", (0, 0), Role.START, "")
        for i in range(1, n + 1):
            self._variable(i)
        clause_base = (n + 1) * self.var_size
        for j in range(1, m + 1):
            self._clause(j, clause_base)
        for occ in self.occurrences:
            self._connect(occ)

    def _place(self, pid: str, xy: Tuple[Union[int, Fraction], ...], role: Role, gadget: str) -> None:
        self.pos[pid] = (Fraction(xy[0]), Fraction(xy[1]))
        self.roles[pid] = role
        self.gadget[pid] = gadget

    def _variable(self, i: int) -> None:
        n = self.formula.num_vars
        ox, oy = i * self.var_size, (n - i + 1) * self.var_size
        name = f"GX{i}"
        mine = [o for o in self.occurrences if o.var == i]
        positives = [o for o in mine if o.positive]
        negatives = [o for o in mine if not o.positive]
        span = len(mine)

        def diag(t: int) -> Tuple[int, int]:
            return ox + _VAR_MARGIN + t, oy + _VAR_MARGIN + span - t

        self._place(f"x{i}", (ox, oy), Role.VARIABLE, name)
        dx, dy = diag(len(positives))
        self._place(f"d{i}", (dx, dy), Role.DEMAND_POINT, name)
        quarter = Fraction(1, 4)
        self._place(f"x{i}+", (ox + quarter, dy - quarter), Role.VARIABLE_LITERAL, name)
        self._place(f"x{i}-", (dx - quarter, oy + quarter), Role.VARIABLE_LITERAL, name)
        slots = list(range(len(positives))) + list(range(len(positives) + 1, span + 1))
        for t, occ in zip(slots, positives + negatives):
            cid = f"x{i}.{t}{occ.sign}"
            self._place(cid, diag(t), Role.CONNECTOR, name)
            self.connectors[occ] = cid
            self.demands.append((f"x{i}{occ.sign}", cid, DemandRole.CONNECTION))
        self.demands.append(("S", f"x{i}", DemandRole.SX))
        self.demands.append((f"x{i}", f"d{i}", DemandRole.XD))
        self.demands.append((f"x{i}+", f"d{i}", DemandRole.VARIABLE))
        self.demands.append((f"x{i}-", f"d{i}", DemandRole.VARIABLE))

    def _clause(self, j: int, base: int) -> None:
        m = self.formula.num_clauses
        ox, oy = base + j * _CLAUSE_SIZE, base + (m - j) * _CLAUSE_SIZE
        name = f"GC{j}"
        mine = [o for o in self.occurrences if o.clause == j]
        ordered = sorted(mine, key=lambda o: (not o.positive, o.position))
        self._place(f"c{j}", (ox + _CLAUSE_CORNER[0], oy + _CLAUSE_CORNER[1]), Role.CLAUSE, name)
        for occ, (lx, ly) in zip(ordered, _LITERAL_SLOTS):
            self._place(occ.literal_id, (ox + lx, oy + ly), Role.CLAUSE_LITERAL, name)
            self.demands.append((occ.literal_id, f"c{j}", DemandRole.CLAUSE))
        self.demands.append(("S", f"c{j}", DemandRole.SC))

    def _connect(self, occ: Occurrence) -> None:
        conn = self.pos[self.connectors[occ]]
        lit = self.pos[occ.literal_id]
        third = Fraction(1, 3)
        if occ.positive:
            xy = (conn[0] + third, lit[1] - third)
        else:
            xy = (lit[0] - third, conn[1] + third)
        self._place(occ.connection_id, xy, Role.CONNECTION, "")
        self.demands.append((self.connectors[occ], occ.connection_id, DemandRole.CONNECTION))
        self.demands.append((occ.connection_id, occ.literal_id, DemandRole.CONNECTION))


def _ranks(values: Iterable[Fraction]) -> Dict[Fraction, int]:
    return {v: r for r, v in enumerate(sorted(set(values)))}


def sat_reduce(formula: CnfFormula) -> GadgetInstance:
    """Build the gadget instance of a 3-CNF formula.

    Raises:
        InstanceError: If the non-SC demands turn out not to be separable.
    """
    layout = _Layout(formula)
    if formula.repeated_literals():
        logger.info("clauses %s repeat a variable", formula.repeated_literals())
    xr = _ranks(x for x, _ in layout.pos.values())
    yr = _ranks(y for _, y in layout.pos.values())
    points = [Point(pid, xr[x], yr[y]) for pid, (x, y) in layout.pos.items()]
    demands = [Demand(a, b) for a, b, _ in layout.demands]
    instance = Instance(tuple(points), tuple(demands))
    demand_roles = {(a, b): role for a, b, role in layout.demands}

    non_sc = [d for d in demands if demand_roles[d.ids()] is not DemandRole.SC]
    certificate = greedy_vs_certificate(instance, non_sc)
    if certificate is None:
        raise InstanceError("gadget demands are not vertically separable", field="layout")
    alpha = 12 * formula.num_clauses + 4 * formula.num_vars
    logger.info(
        "compiled %d variables, %d clauses into %d points, alpha=%d",
        formula.num_vars,
        formula.num_clauses,
        len(points),
        alpha,
    )
    return GadgetInstance(
        formula=formula,
        instance=instance,
        alpha=alpha,
        roles=layout.roles,
        gadget=layout.gadget,
        demand_roles=demand_roles,
        certificate=certificate,
        connectors=layout.connectors,
    )


def _top_left(instance: Instance, demand: Demand) -> XY:
    a, b = sorted(instance.endpoints(demand), key=lambda p: p.x)
    return a.x, b.y


@dataclass(frozen=True)
class BooleanSolution:
    solution: Solution
    satisfied_sc: FrozenSet[Tuple[str, str]]


def boolean_solution(gadget: GadgetInstance, assignment: Assignment) -> BooleanSolution:
    """The alpha-point solution induced by a truth assignment.

    Every non-SC demand except the XD demands gets its top-left corner. For
    XD demand (x_i, d_i) the top-left corner of R(x_i, x_i+) is used when x_i
    is true and that of R(x_i, x_i-) otherwise. Reports which SC demands the
    result happens to satisfy.

    Raises:
        InstanceError: If the assignment does not cover every variable.
    """
    inst = gadget.instance
    n = gadget.formula.num_vars
    corners: List[XY] = []
    for demand in gadget.non_sc_demands:
        if gadget.demand_roles[demand.ids()] is DemandRole.XD:
            var = int(demand.a[1:])
            side = "+" if _value(assignment, var, n) else "-"
            corners.append(_top_left(inst, Demand(demand.a, f"{demand.a}{side}")))
        else:
            corners.append(_top_left(inst, demand))
    solution = Solution.from_coords(corners, inst)
    index = ManhattanIndex(set(inst.coords) | set(solution.coords))
    satisfied = frozenset(
        d.ids() for d in gadget.sc_demands if index.m_connected(*inst.demand_xy(d))
    )
    return BooleanSolution(solution, satisfied)


def validate_gadget(gadget: GadgetInstance) -> List[str]:
    """Structural checks on a compiled gadget; returns the violated properties, empty when sound."""
    problems: List[str] = []
    inst = gadget.instance
    formula = gadget.formula
    if not is_strict(inst):
        problems.append("instance is not strict")
    non_sc = gadget.non_sc_demands
    if gadget.alpha != 12 * formula.num_clauses + 4 * formula.num_vars:
        problems.append(f"alpha {gadget.alpha} != 12m + 4n")
    if len(non_sc) != gadget.alpha:
        problems.append(f"{len(non_sc)} non-SC demands, expected {gadget.alpha}")
    if len(gadget.sc_demands) != formula.num_clauses:
        problems.append("one SC demand per clause expected")
    for d in non_sc:
        a, b = inst.endpoints(d)
        if not (a.x < b.x and a.y < b.y):
            problems.append(f"demand {d.a}-{d.b} is not monotone increasing")
    if not verify_vs_certificate(inst, gadget.certificate) or len(gadget.certificate) != len(non_sc):
        problems.append("separability certificate does not verify")

    pt = inst.point
    start = pt("S")
    if any(p.x < start.x or p.y < start.y for p in inst.points):
        problems.append("S is not bottom-left of every point")
    var_pts = [p for p in inst.points if gadget.gadget[p.id].startswith("GX")]
    clause_pts = [p for p in inst.points if gadget.gadget[p.id].startswith("GC")]
    if var_pts and clause_pts:
        if max(p.x for p in var_pts) >= min(p.x for p in clause_pts) or max(
            p.y for p in var_pts
        ) >= min(p.y for p in clause_pts):
            problems.append("variable gadgets are not bottom-left of clause gadgets")
    problems += _descending([pt(f"x{i}").xy for i in range(1, formula.num_vars + 1)], "variable gadgets")
    problems += _descending([pt(f"c{j}").xy for j in range(1, formula.num_clauses + 1)], "clause gadgets")

    for i in range(1, formula.num_vars + 1):
        box = Rect.of(pt(f"x{i}").xy, pt(f"d{i}").xy)
        for side in "+-":
            if not box.interior_contains(pt(f"x{i}{side}").xy):
                problems.append(f"x{i}{side} is not inside R(x{i}, d{i})")
    for occ, cid in gadget.connectors.items():
        above = pt(cid).y > pt(f"d{occ.var}").y
        if above != occ.positive:
            problems.append(f"connector {cid} is on the wrong side of d{occ.var}")
    for j in range(1, formula.num_clauses + 1):
        lits = [o for o in occurrences(formula) if o.clause == j]
        pos_y = [pt(o.literal_id).y for o in lits if o.positive]
        neg_y = [pt(o.literal_id).y for o in lits if not o.positive]
        if pos_y and neg_y and min(pos_y) < max(neg_y):
            problems.append(f"clause {j}: a negative literal lies above a positive one")
    return problems


def _descending(corners: List[XY], what: str) -> List[str]:
    for (x0, y0), (x1, y1) in zip(corners, corners[1:]):
        if not (x0 < x1 and y0 > y1):
            return [f"{what} do not follow a descending diagonal"]
    return []
