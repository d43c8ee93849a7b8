"""Ring analysis, index sweeps and the parameter-ideal experiments, with report emission."""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .algebra import GradedAlgebra
from .complexes import DegreeBoundExceeded, InternalConsistencyError
from .field import Field
from .koszul import depth as koszul_depth
from .local import (
    ParameterSequence,
    StabilizationError,
    as_sequence,
    index_of_reducibility,
    is_system_of_parameters,
    limit_closure,
    random_homogeneous_sop,
)
from .resolutions import compute_ell, koszul_ext_agreement

COEFFICIENT_BOUND = 5


def load_ring(spec, field: str | Field | None = None) -> GradedAlgebra:
    """A ring from a spec dict, a JSON string, a path, or an existing algebra."""
    if isinstance(spec, GradedAlgebra):
        if field is None:
            return spec
        spec = spec.to_spec()
    if isinstance(spec, Path) or (isinstance(spec, str) and not spec.lstrip().startswith("{")):
        spec = json.loads(Path(spec).read_text())
    elif isinstance(spec, str):
        spec = json.loads(spec)
    if not isinstance(spec, dict) or "vars" not in spec:
        raise ValueError("ring spec needs a 'vars' list")
    if isinstance(field, str):
        field = Field.from_flag(field)
    return GradedAlgebra.from_spec(spec, field)


@dataclass
class RingReport:
    ring: str
    spec: dict
    dim: int
    depth: int
    cm: bool
    gorenstein: bool
    type: int | None
    socle_h: list
    socle_h_ext: list
    ell: list
    stabilization: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    experiments: dict = field(default_factory=dict)
    sampling: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "RingReport":
        return cls(**data)

    columns = ("field", "value")

    def rows(self) -> list[tuple]:
        return [
            ("ring", self.ring),
            ("dim", self.dim),
            ("depth", self.depth),
            ("cm", self.cm),
            ("gorenstein", self.gorenstein),
            ("type", self.type),
            ("socle_h", " ".join(map(str, self.socle_h))),
            ("socle_h_ext", " ".join(map(str, self.socle_h_ext))),
            ("ell (observed)", " ".join("-" if v is None else str(v) for v in self.ell)),
        ] + [("experiment " + k, v.get("verdict", "")) for k, v in sorted(self.experiments.items())]

    def footer(self) -> list[str]:
        return ["warning: " + w for w in self.warnings]


def analyze_ring(
    spec, window: int = 2, seed: int = 0, degree_bound: int | None = None, field=None, samples: int = 0
) -> RingReport:
    """dim, depth, CM and Gorenstein verdicts, both socle pipelines, and observed ℓ_i.

    With ``samples > 0`` the parameter-ideal experiment inside ``m^{ℓ_d}`` is
    run as well and summarized under ``experiments``.
    """
    R = load_ring(spec, field)
    d = R.dim
    sop = random_homogeneous_sop(R, 1, seed=seed)
    depth = koszul_depth(R, sop)
    R._depth = depth
    cm = depth == d
    typ = index_of_reducibility(R, sop.elements) if cm else None
    warnings: list[str] = []
    socle_k: list = []
    socle_e: list = []
    ell: list = []
    stab: dict = {}
    for i in range(d + 1):
        try:
            agr = koszul_ext_agreement(R, i, window=window, seq=sop)
        except (StabilizationError, DegreeBoundExceeded) as exc:
            warnings.append("H^%d: %s" % (i, exc))
            socle_k.append(None)
            socle_e.append(None)
            ell.append(None)
            continue
        if not agr.ok:
            raise InternalConsistencyError(agr.diff())
        socle_k.append(agr.koszul)
        socle_e.append(agr.ext)
        ell.append(compute_ell(R, i, record=agr.ext_record))
        stab[str(i)] = {"koszul": agr.koszul_record.to_json(), "ext": agr.ext_record.to_json()}
    # H^i_m(R) = 0 for i < d exactly when R is CM; an Artinian module vanishes iff its socle does
    if None not in socle_k[:d] and cm != all(v == 0 for v in socle_k[:d]):
        raise InternalConsistencyError("depth %d disagrees with local cohomology socles %s" % (depth, socle_k))
    report = RingReport(
        ring=R.spec_hash(),
        spec=R.to_spec(),
        dim=d,
        depth=depth,
        cm=cm,
        gorenstein=cm and typ == 1,
        type=typ,
        socle_h=socle_k,
        socle_h_ext=socle_e,
        ell=ell,
        stabilization=stab,
        warnings=warnings,
        sampling={"seed": seed, "coefficient_bound": COEFFICIENT_BOUND, "sop": sop.describe(), "window": window},
    )
    if samples and ell and ell[d] is not None:
        v = theorem_main_check(R, samples, seed, window, report=report)
        report.experiments["theorem"] = {
            "ell": v.ell, "samples": v.samples, "irreducible": v.irreducible, "witness": v.witness, "verdict": v.message,
        }
    return report


def eventual_index(d: int, socle_h: list) -> int:
    """``Σ binom(d, i) dim Soc H^i_m(R)``."""
    return sum(math.comb(d, i) * s for i, s in enumerate(socle_h))


@dataclass
class SweepTable:
    ring: str
    sop: str
    rows: list
    prediction: int

    columns = ("n", "ideal", "index", "irreducible")

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, data: dict) -> "SweepTable":
        return cls(data["ring"], data["sop"], [list(r) for r in data["rows"]], data["prediction"])

    def indices(self) -> list[int]:
        return [r[2] for r in self.rows]

    def footer(self) -> list[str]:
        return ["eventual-constant prediction: %d" % self.prediction]


def index_sweep(spec, sop=None, max_n: int = 6, seed: int = 0, window: int = 2, field=None) -> SweepTable:
    """Index of reducibility of ``(x_1^n, ..., x_d^n)`` for ``n = 1..max_n``."""
    R = load_ring(spec, field)
    seq = random_homogeneous_sop(R, 1, seed=seed) if sop is None else as_sequence(R, sop)
    if not is_system_of_parameters(R, seq):
        raise ValueError("%s is not a system of parameters" % seq.describe())
    rows = []
    for n in range(1, max_n + 1):
        q = seq.power(n)
        idx = index_of_reducibility(R, q.elements)
        rows.append([n, q.describe(), idx, idx == 1])
    socles = [_socle_h(R, i, window, seq) for i in range(R.dim + 1)]
    return SweepTable(R.spec_hash(), seq.describe(), rows, eventual_index(R.dim, socles))


def _socle_h(R: GradedAlgebra, i: int, window: int, seq) -> int:
    from .koszul import local_cohomology_socles

    return local_cohomology_socles(R, i, window=window, seq=seq).limit_socle_dim


def socle_of_limit_quotient(R: GradedAlgebra, seq) -> int:
    """``dim Soc(q^lim / q)`` for ``q = (seq)``."""
    seq = as_sequence(R, seq)
    q = R.quotient_ideal(seq.elements)
    L = limit_closure(R, seq)
    top = q.colon(R.m).intersect(L)
    return len(q.quotient_basis()) - len(top.quotient_basis())


def proof_identity(R: GradedAlgebra, seq, socle_top: int) -> tuple[int, int, int]:
    """``(index(q), dim Soc(q^lim/q), dim Soc H^d)`` for checking ``index = sum`` when ``q ⊆ m^{ℓ_d}``."""
    seq = as_sequence(R, seq)
    return index_of_reducibility(R, seq.elements), socle_of_limit_quotient(R, seq), socle_top


@dataclass
class TheoremVerdict:
    ring: str
    gorenstein: bool
    ell: int
    samples: int
    irreducible: int
    witness: int | None
    message: str
    sample_rows: list = field(default_factory=list)

    columns = ("sample", "sop", "index", "irreducible")

    def to_json(self) -> dict:
        return asdict(self)

    def rows(self) -> list:
        return self.sample_rows

    def footer(self) -> list[str]:
        return [self.message]


def _sample_seeds(seed: int, count: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.randrange(2**31) for _ in range(count)]


def theorem_main_check(spec, samples: int = 20, seed: int = 0, window: int = 2, report: RingReport | None = None, field=None) -> TheoremVerdict:
    """Sample sops inside ``m^ℓ`` (ℓ = observed ℓ_d) and compare their irreducibility with the Gorenstein verdict."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    R = load_ring(spec, field)
    if report is None:
        report = analyze_ring(R, window=window, seed=seed)
    d = report.dim
    ell = report.ell[d]
    if ell is None:
        raise StabilizationError("ell_%d unavailable: %s" % (d, "; ".join(report.warnings)))
    if d == 0:
        idx = index_of_reducibility(R, [])
        gor = idx == 1
        if gor != report.gorenstein:
            raise InternalConsistencyError("Soc R has dimension %d but the ring report says gorenstein=%s" % (idx, report.gorenstein))
        msg = ("Gorenstein; zero parameter ideal irreducible (Soc dim %d)" if gor
               else "not Gorenstein; zero parameter ideal reducible (Soc dim %d)") % idx
        return TheoremVerdict(report.ring, gor, ell, 1, int(gor), 1 if gor else None, msg, [[1, "(0)", idx, gor]])
    rows = []
    irreducible = 0
    witness = None
    for k, s in enumerate(_sample_seeds(seed, samples), start=1):
        seq = random_homogeneous_sop(R, max(ell, 1), seed=s)
        idx = index_of_reducibility(R, seq.elements)
        rows.append([k, seq.describe(), idx, idx == 1])
        if idx == 1:
            irreducible += 1
            if witness is None:
                witness = k
    if report.gorenstein and witness != 1:
        raise InternalConsistencyError("Gorenstein ring but sample 1 inside m^%d is reducible" % ell)
    if not report.gorenstein and irreducible:
        raise InternalConsistencyError(
            "non-Gorenstein ring but %d/%d sampled parameter ideals inside m^%d are irreducible" % (irreducible, samples, ell)
        )
    if report.gorenstein:
        msg = "Gorenstein; witness found at sample %d" % witness
    else:
        msg = "not Gorenstein; 0/%d irreducible in m^%d" % (samples, ell)
    return TheoremVerdict(report.ring, report.gorenstein, ell, samples, irreducible, witness, msg, rows)


@dataclass
class CorollaryTable:
    ring: str
    gorenstein: bool
    ell: int
    rows: list

    columns = ("n", "found", "tried", "theorem")

    def to_json(self) -> dict:
        return asdict(self)

    def footer(self) -> list[str]:
        return ["sampling verdicts are evidence only; the theorem column is derived from observed ell_d = %d" % self.ell]


def corollary_search(spec, max_power: int = 4, samples: int = 50, seed: int = 0, window: int = 2, report: RingReport | None = None, field=None) -> CorollaryTable:
    """Look for an irreducible parameter ideal inside ``m^n`` for each ``n <= max_power``."""
    if max_power < 1:
        raise ValueError("max_power must be at least 1")
    R = load_ring(spec, field)
    if report is None:
        report = analyze_ring(R, window=window, seed=seed)
    d = report.dim
    ell = report.ell[d]
    rows = []
    for n in range(1, max_power + 1):
        if ell is None or n < ell:
            theorem = "not decided (n < ell_d)" if ell is not None else "unknown"
        else:
            theorem = "exists" if report.gorenstein else "impossible for n >= ell_d"
        if d == 0:
            found = "(0)" if index_of_reducibility(R, []) == 1 else None
            rows.append([n, found if found else "none found in 1 samples", 1, theorem])
            continue
        found = None
        tried = 0
        for s in _sample_seeds(seed * 1009 + n, samples):
            tried += 1
            seq = random_homogeneous_sop(R, n, seed=s)
            if index_of_reducibility(R, seq.elements) == 1:
                found = seq.describe()
                break
        rows.append([n, found if found else "none found in %d samples" % tried, tried, theorem])
    return CorollaryTable(report.ring, report.gorenstein, ell, rows)


FORMATS = ("table", "json", "csv")


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def emit_report(report, fmt: str = "table") -> str:
    """Serialize a report object as an aligned table, JSON, or CSV."""
    if fmt not in FORMATS:
        raise ValueError("unknown format %r (expected one of %s)" % (fmt, ", ".join(FORMATS)))
    if fmt == "json":
        return json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n"
    rows = report.rows() if callable(getattr(report, "rows", None)) else report.rows
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(report.columns)
        for r in rows:
            w.writerow([_cell(v) for v in r])
        return buf.getvalue()
    cells = [list(report.columns)] + [[_cell(v) for v in r] for r in rows]
    widths = [max(len(c[j]) for c in cells) for j in range(len(report.columns))]
    lines = ["  ".join(c[j].ljust(widths[j]) for j in range(len(widths))).rstrip() for c in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    lines.extend(report.footer())
    return "\n".join(lines) + "\n"


__all__ = [
    "RingReport",
    "SweepTable",
    "TheoremVerdict",
    "CorollaryTable",
    "ParameterSequence",
    "load_ring",
    "analyze_ring",
    "index_sweep",
    "theorem_main_check",
    "corollary_search",
    "emit_report",
    "eventual_index",
    "proof_identity",
    "socle_of_limit_quotient",
]
