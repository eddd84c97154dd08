"""Job files for evocli: parsing, printing and dispatch.

A job is a sequence of ``;``-terminated statements::

    ring GF(2)[x1,x2,x3,x4];
    ideal I = x1^3 + x2^2, x1*x4 - x2*x3;
    poly f = x1^3*x2 + x2^3;
    matrix M = [[z, x^2], [y, z], [x, y]];
    curve C = 4, 6, 7, 9;
    cmd evolution-check --strategy saturation --h x1;

``#`` starts a comment.  Exactly one ``cmd`` statement is required.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import groebner as gb
from .evolution import (
    check_evolutions,
    conjecture_explorer,
    hilbert_burch_check,
    square_certificate,
)
from .exactfield import QQ, ContextError, GF, parse_field
from .groebner import BudgetExceeded, budget_scope, check_buchberger_criterion, is_reduced
from .idealcalc import Ideal, PreconditionError, codimension, is_minimal_generator
from .modfit import (
    ModulePresentation,
    PolyMatrix,
    fitting_ideal,
    fitting_ideal_of_ideal,
    present_ideal_quotient,
)
from .polyring import NotInvertibleError, ParseError, Polynomial, Ring, order_from_name, parse_ring
from .symbolic import (
    SymbolicPowerRequest,
    in_symbolic_power,
    in_symbolic_square,
    symbolic_power,
)
from .toriclab import (
    MonomialCurve,
    binomial_absence_check,
    kunz_example,
    paper_family,
    pure_power_certificate,
)

COMMANDS = (
    "gb",
    "member",
    "symbolic-power",
    "fitting",
    "evolution-check",
    "toric",
    "paper-example",
    "kunz",
    "hilbert-burch",
    "conjecture",
)

# flag -> value type; None marks a switch
FLAGS = {
    "order": str,
    "strategy": str,
    "h": str,
    "budget": int,
    "seed": int,
    "p": int,
    "d": int,
    "i": int,
    "c": int,
    "field": str,
    "out": str,
    "prime": None,
}
FLAG_CHOICES = {
    "order": ("grevlex", "lex"),
    "strategy": ("saturation", "monomial", "fitting"),
}

DEFAULT_BUDGETS = {"kunz": 50_000_000, "paper-example": 20_000_000}

EXIT_OK, EXIT_PARSE, EXIT_BUDGET, EXIT_PRECONDITION = 0, 2, 3, 4


@dataclass
class JobSpec:
    command: str
    ring: Optional[str] = None
    ideals: Dict[str, Tuple[str, ...]] = field(default_factory=dict)
    polys: Dict[str, str] = field(default_factory=dict)
    matrices: Dict[str, Tuple[Tuple[str, ...], ...]] = field(default_factory=dict)
    curves: Dict[str, Tuple[int, ...]] = field(default_factory=dict)
    flags: Dict[str, object] = field(default_factory=dict)

    def to_text(self) -> str:
        out = []
        if self.ring is not None:
            out.append(f"ring {self.ring};")
        for k, gens in self.ideals.items():
            out.append(f"ideal {k} = {', '.join(gens)};")
        for k, p in self.polys.items():
            out.append(f"poly {k} = {p};")
        for k, rows in self.matrices.items():
            body = ", ".join("[" + ", ".join(r) + "]" for r in rows)
            out.append(f"matrix {k} = [{body}];")
        for k, a in self.curves.items():
            out.append(f"curve {k} = {', '.join(map(str, a))};")
        parts = [f"cmd {self.command}"]
        for k in FLAGS:
            if k in self.flags:
                v = self.flags[k]
                parts.append(f"--{k}" if FLAGS[k] is None else f"--{k} {v}")
        out.append(" ".join(parts) + ";")
        return "\n".join(out) + "\n"

    def make_ring(self) -> Ring:
        if self.ring is None:
            raise PreconditionError(f"command {self.command} needs a ring declaration")
        return parse_ring(self.ring)


# --------------------------------------------------------------------------
# parsing


def _statements(text: str):
    """Yield (offset, statement) pairs split at top-level semicolons."""
    depth = 0
    start = 0
    # blank out comments so offsets are preserved
    src = re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)
    for i, ch in enumerate(src):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ']'", i, text)
        elif ch == ";" and depth == 0:
            stmt = src[start:i]
            if stmt.strip():
                lead = len(stmt) - len(stmt.lstrip())
                yield start + lead, stmt.strip()
            start = i + 1
    if depth != 0:
        raise ParseError("unbalanced '['", len(text), text)
    if src[start:].strip():
        raise ParseError("statement not terminated by ';'", start + len(src[start:]) - len(src[start:].lstrip()), text)


def _split_top(s: str, sep: str = ","):
    """Split at separators outside brackets; yields (offset, piece)."""
    depth = 0
    start = 0
    for i, ch in enumerate(s):
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        elif ch == sep and depth == 0:
            yield start, s[start:i]
            start = i + 1
    yield start, s[start:]


_ASSIGN = re.compile(r"^(ideal|poly|matrix|curve)\s+([A-Za-z_][A-Za-z_0-9]*)\s*=\s*")


def _poly(text: str, ring: Ring, offset: int, full: str) -> str:
    lead = len(text) - len(text.lstrip())
    try:
        return ring(text.strip()).to_string()
    except ParseError as exc:
        raise ParseError(str(exc).rsplit(" at position", 1)[0], offset + lead + exc.pos, full) from None
    except (ValueError, ContextError) as exc:
        raise ParseError(str(exc), offset + lead, full) from None


def _parse_flags(s: str, offset: int, full: str) -> Dict[str, object]:
    flags: Dict[str, object] = {}
    toks = [(m.start(), m.group()) for m in re.finditer(r"\S+", s)]
    k = 0
    while k < len(toks):
        pos, tok = toks[k]
        if not tok.startswith("--"):
            raise ParseError(f"expected a flag, got {tok!r}", offset + pos, full)
        name = tok[2:]
        if name not in FLAGS:
            raise ParseError(f"unknown flag {tok!r}", offset + pos, full)
        typ = FLAGS[name]
        if typ is None:
            flags[name] = True
            k += 1
            continue
        if k + 1 >= len(toks):
            raise ParseError(f"flag {tok} needs a value", offset + pos, full)
        vpos, val = toks[k + 1]
        try:
            v = typ(val)
        except ValueError:
            raise ParseError(f"bad value {val!r} for {tok}", offset + vpos, full) from None
        if name in FLAG_CHOICES and v not in FLAG_CHOICES[name]:
            raise ParseError(f"{tok} must be one of {', '.join(FLAG_CHOICES[name])}", offset + vpos, full)
        flags[name] = v
        k += 2
    return flags


def parse_job(text: str) -> JobSpec:
    ring: Optional[Ring] = None
    ring_decl = None
    ideals: Dict[str, Tuple[str, ...]] = {}
    polys: Dict[str, str] = {}
    matrices: Dict[str, Tuple[Tuple[str, ...], ...]] = {}
    curves: Dict[str, Tuple[int, ...]] = {}
    command = None
    flags: Dict[str, object] = {}
    for off, st in _statements(text):
        if st.startswith("ring ") or st == "ring":
            body = st[4:]
            ring = parse_ring_at(body, off + 4, text)
            ring_decl = repr(ring)
            continue
        if st.startswith("cmd"):
            m = re.match(r"^cmd\s+(\S+)", st)
            if m is None:
                raise ParseError("missing command name", off, text)
            if command is not None:
                raise ParseError("only one cmd statement is allowed", off, text)
            command = m.group(1)
            if command not in COMMANDS:
                raise ParseError(f"unknown command {command!r}", off + m.start(1), text)
            flags = _parse_flags(st[m.end() :], off + m.end(), text)
            continue
        m = _ASSIGN.match(st)
        if m is None:
            raise ParseError(f"unrecognised statement {st.split()[0]!r}", off, text)
        kind, name = m.group(1), m.group(2)
        body, boff = st[m.end() :], off + m.end()
        if kind == "curve":
            try:
                curves[name] = tuple(int(a) for a in body.split(","))
            except ValueError:
                raise ParseError("curve exponents must be integers", boff, text) from None
            continue
        if ring is None:
            raise ParseError(f"{kind} {name} declared before the ring", off, text)
        if kind == "ideal":
            ideals[name] = tuple(_poly(p, ring, boff + o, text) for o, p in _split_top(body))
        elif kind == "poly":
            polys[name] = _poly(body, ring, boff, text)
        else:
            b = body.strip()
            lead = len(body) - len(body.lstrip())
            if not (b.startswith("[") and b.endswith("]")):
                raise ParseError("matrix must look like [[a, b], [c, d]]", boff, text)
            rows = []
            inner = b[1:-1]
            for o, r in _split_top(inner):
                rs = r.strip()
                rlead = len(r) - len(r.lstrip())
                if not (rs.startswith("[") and rs.endswith("]")):
                    raise ParseError("matrix rows must be bracketed", boff + lead + 1 + o, text)
                base = boff + lead + 1 + o + rlead + 1
                rows.append(tuple(_poly(p, ring, base + po, text) for po, p in _split_top(rs[1:-1])))
            if len({len(r) for r in rows}) > 1:
                raise ParseError("ragged matrix", boff, text)
            matrices[name] = tuple(rows)
    if command is None:
        raise ParseError("no cmd statement", len(text), text)
    return JobSpec(command, ring_decl, ideals, polys, matrices, curves, flags)


def parse_ring_at(body: str, offset: int, full: str) -> Ring:
    try:
        return parse_ring(body)
    except ParseError as exc:
        raise ParseError(str(exc).rsplit(" at position", 1)[0], offset + exc.pos, full) from None


# --------------------------------------------------------------------------
# reports


@dataclass
class RunReport:
    job: str
    command: str
    status: str
    result: Dict[str, object] = field(default_factory=dict)
    certificates: Dict[str, object] = field(default_factory=dict)
    hypotheses: List[str] = field(default_factory=list)
    resources: Dict[str, object] = field(default_factory=dict)
    timing: Dict[str, float] = field(default_factory=dict)
    exit_code: int = EXIT_OK
    error: Optional[str] = None

    def to_json_obj(self, with_timing: bool = True) -> dict:
        d = {
            "job": self.job,
            "command": self.command,
            "status": self.status,
            "exit_code": self.exit_code,
            "result": _plain(self.result),
            "certificates": _plain(self.certificates),
            "hypotheses": list(self.hypotheses),
            "resources": _plain(self.resources),
        }
        if self.error is not None:
            d["error"] = self.error
        if with_timing:
            d["timing"] = dict(self.timing)
        return d

    def summary(self) -> str:
        lines = [f"{self.command}: {self.status}"]
        for k, v in self.result.items():
            if isinstance(v, (list, tuple)) and len(v) > 6:
                v = f"[{len(v)} items]"
            lines.append(f"  {k}: {_plain(v)}")
        if self.error:
            lines.append(f"  error: {self.error}")
        return "\n".join(lines)


def _plain(x):
    """Convert results to JSON-friendly values (polynomials become strings)."""
    if isinstance(x, Polynomial):
        return x.to_string()
    if isinstance(x, (Ideal, PolyMatrix)):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


# --------------------------------------------------------------------------
# dispatch


def _one(d: dict, what: str):
    if not d:
        raise PreconditionError(f"job declares no {what}")
    return next(iter(d.values()))


def _ideal(job: JobSpec, ring: Ring) -> Ideal:
    gens = _one(job.ideals, "ideal")
    return Ideal([ring(g) for g in gens], ring)


def _matrix(job: JobSpec, ring: Ring) -> PolyMatrix:
    rows = _one(job.matrices, "matrix")
    return PolyMatrix([[ring(x) for x in r] for r in rows], ring)


def _run_gb(job, rep):
    ring = job.make_ring()
    I = _ideal(job, ring)
    order = order_from_name(job.flags.get("order", "grevlex"))
    G = gb.buchberger(list(I.gens), order=order, ring=ring)
    rep.result["basis"] = [g.to_string(order) for g in G.basis]
    rep.certificates["buchberger_criterion"] = check_buchberger_criterion(G)
    rep.certificates["reduced"] = is_reduced(G)


def _run_member(job, rep):
    ring = job.make_ring()
    I = _ideal(job, ring)
    f = ring(_one(job.polys, "poly"))
    nf = I.normal_form(f)
    rep.result["member"] = nf.is_zero()
    rep.certificates["normal_form"] = nf


def _run_symbolic(job, rep):
    ring = job.make_ring()
    I = _ideal(job, ring)
    d = job.flags.get("d", 2)
    strategy = job.flags.get("strategy", "saturation")
    h = ring(job.flags["h"]) if "h" in job.flags else None
    if strategy == "fitting":
        f = ring(_one(job.polys, "poly"))
        c = job.flags.get("c")
        prime = bool(job.flags.get("prime"))
        if d == 2:
            v = in_symbolic_square(I, f, c, prime=prime)
        else:
            v = in_symbolic_power(I, f, d - 1, c, h=h, prime=prime)
        rep.result.update(member=v.member, d=d, strategy=strategy, minor_size=v.minor_size)
        rep.certificates.update(rows=v.rows, cols=v.cols, minor=v.minor, minor_mod_I=v.minor_mod_I)
        rep.hypotheses.append(v.hypothesis)
        return
    req = SymbolicPowerRequest(I, d, strategy, h, prime=bool(job.flags.get("prime")))
    S = symbolic_power(req)
    rep.result.update(d=d, strategy=strategy, generators=list(S.gens))
    rep.hypotheses.extend(req.notes)
    if job.polys:
        f = ring(_one(job.polys, "poly"))
        rep.result["member"] = S.contains(f)


def _run_fitting(job, rep):
    ring = job.make_ring()
    i = job.flags.get("i", 0)
    if job.matrices:
        Mp = ModulePresentation(ring, _matrix(job, ring))
        source = "cokernel of matrix"
    else:
        I = _ideal(job, ring)
        if job.polys:
            Mp = present_ideal_quotient(I, ring(_one(job.polys, "poly")))
            source = "ideal modulo element"
        else:
            from .modfit import presentation_of_ideal

            Mp = presentation_of_ideal(I)
            source = "ideal as module"
    F = fitting_ideal(Mp, i)
    rep.result.update(index=i, source=source, shape=list(Mp.matrix.shape), generators=F.reduced_generators() if not F.is_zero() else [])


def _verdict_into(v, rep):
    rep.result.update(
        verdict=v.verdict,
        strategy=v.strategy,
        witness=v.witness,
        square_generators=v.square_generators,
    )
    rep.certificates.update(v.certificates)
    rep.hypotheses.extend(v.hypotheses)


def _run_evolution(job, rep):
    ring = job.make_ring()
    I = _ideal(job, ring)
    strategy = job.flags.get("strategy", "saturation")
    h = ring(job.flags["h"]) if "h" in job.flags else None
    cands = [ring(p) for p in job.polys.values()] or None
    v = check_evolutions(I, strategy, h, prime=bool(job.flags.get("prime")), candidates=cands)
    _verdict_into(v, rep)


def _run_toric(job, rep):
    a = _one(job.curves, "curve")
    F = parse_field(job.flags["field"]) if "field" in job.flags else (job.make_ring().field if job.ring else QQ)
    curve = MonomialCurve(a, F)
    I = curve.toric_ideal()
    rep.result.update(exponents=list(a), field=str(F), generators=list(I.gens), ring=repr(curve.ring))
    rep.certificates["substitution_check"] = all(curve.vanishes(g) for g in I.gens)


def _run_paper(job, rep):
    p = job.flags.get("p")
    if p is None:
        if job.ring is None:
            raise PreconditionError("paper-example needs --p or a GF(p) ring")
        p = getattr(job.make_ring().field, "p", None)
        if p is None:
            raise PreconditionError("paper-example needs a prime field")
    fam = paper_family(p)
    I, f, ring = fam.ideal, fam.f, fam.ring
    x1 = ring.var(0)
    res = fam.identity_residual()
    # saturation route
    sat_pow = square_certificate(I, f, x1)
    # Fitting route
    # toric ideals are prime
    fv = in_symbolic_square(I, f, 3, prime=True)
    in_MI = I.times_maximal().contains(f)
    absent = binomial_absence_check(fam.curve, 3, p)
    ppc = pure_power_certificate(fam.curve, f)
    v = check_evolutions(I, "saturation", x1, provenance=f"toric family p={p}")
    rep.result.update(
        p=p,
        ring=repr(ring),
        exponents=list(fam.curve.exponents),
        ideal=list(I.gens),
        f=f,
        identity_holds=res.is_zero(),
        f_in_square_saturation=sat_pow is not None,
        f_in_square_fitting=fv.member,
        f_in_MI=in_MI,
        f_minimal_generator_nakayama=is_minimal_generator(I, f),
        f_minimal_generator_semigroup=absent and ppc is not None,
        verdict=v.verdict,
        witness=v.witness,
    )
    rep.certificates.update(
        identity_residual=res,
        saturation_h="x1",
        saturation_h_power=sat_pow,
        fitting_minor_size=fv.minor_size,
        fitting_relations=fv.n_relations,
        f_mod_MI=I.times_maximal().normal_form(f),
        binomial_absence=absent,
        pure_power_term=list(ppc) if ppc else None,
        witness_h_power=v.certificates.get("h_power"),
    )
    rep.hypotheses.extend(v.hypotheses)
    rep.hypotheses.append(fv.hypothesis)


def _run_kunz(job, rep):
    curve, I = kunz_example()
    x1 = I.ring.var(0)
    v = check_evolutions(I, "saturation", x1, provenance="Kunz curve (14,20,25,30,91)")
    _verdict_into(v, rep)
    rep.result["ring"] = repr(I.ring)
    rep.result["ideal"] = list(I.gens)
    if v.witness is not None:
        ppc = pure_power_certificate(curve, v.witness)
        rep.certificates["pure_power_term"] = list(ppc) if ppc else None
        rep.certificates["witness_minimal_generator"] = is_minimal_generator(I, v.witness)


def _run_hb(job, rep):
    ring = job.make_ring()
    M = _matrix(job, ring)
    r = hilbert_burch_check(M, ring(job.flags["h"]) if "h" in job.flags else None)
    rep.result.update(holds=r.holds, columns=r.details["columns"], ideal=r.details["ideal"], square=r.details["square"])
    rep.certificates["witness"] = r.witness
    rep.hypotheses.extend(r.hypotheses)


def _run_conjecture(job, rep):
    F = parse_field(job.flags.get("field", "GF(101)"))
    r = conjecture_explorer(job.flags.get("seed", 0), job.flags.get("d", 2), F)
    rep.result.update(
        seed=r.seed,
        seed_used=r.seed_used,
        d=r.d,
        field=r.field,
        matrix=r.matrix,
        ideal=r.ideal,
        annihilator=r.annihilator,
        candidate=r.candidate,
        relation=r.relation,
        entries_relation=r.entries_relation,
        f1_in_annihilator=r.f1_in_annihilator,
        fitting_containment=r.fitting_containment,
    )


_DISPATCH = {
    "gb": _run_gb,
    "member": _run_member,
    "symbolic-power": _run_symbolic,
    "fitting": _run_fitting,
    "evolution-check": _run_evolution,
    "toric": _run_toric,
    "paper-example": _run_paper,
    "kunz": _run_kunz,
    "hilbert-burch": _run_hb,
    "conjecture": _run_conjecture,
}


def run(job: JobSpec) -> RunReport:
    """Execute a job; errors become a report with a nonzero exit code."""
    rep = RunReport(job.to_text(), job.command, "done")
    limit = job.flags.get("budget", DEFAULT_BUDGETS.get(job.command, gb.DEFAULT_BUDGET))
    before = dict(gb.STATS)
    t0 = time.perf_counter()
    try:
        with budget_scope(limit) as b:
            _DISPATCH[job.command](job, rep)
    except BudgetExceeded as exc:
        rep.status, rep.exit_code, rep.error = "budget-exceeded", EXIT_BUDGET, str(exc)
    except (PreconditionError, NotInvertibleError, ContextError) as exc:
        rep.status, rep.exit_code, rep.error = "precondition-violated", EXIT_PRECONDITION, str(exc)
    except ParseError as exc:
        rep.status, rep.exit_code, rep.error = "parse-error", EXIT_PARSE, str(exc)
    rep.timing["seconds"] = round(time.perf_counter() - t0, 6)
    rep.resources = {
        "budget": limit,
        "reduction_steps": b.steps,
        "groebner_bases": gb.STATS["groebner_bases"] - before["groebner_bases"],
    }
    return rep
