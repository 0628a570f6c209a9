"""Assembly of the analysis report shared by the CLI and the HTTP service."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Tuple

from FLAGREG.services.config import config
from FLAGREG.services.models import AnalysisReport
from FLAGREG.services.util.betti import (
    hochster_table, krull_dim, linear_strand_length, np_via_betti, np_via_cycles, regularity,
    systole
)
from FLAGREG.services.util.bounds import (
    BoundReport, double_counting_check, manifold_remark_check, thm1_verdict, thm2_verdict,
    thm4_verdict, twelve_vertex_check
)
from FLAGREG.services.util.complex import (
    SimplicialComplex, Verdict, f_vector, h_vector, is_flag
)
from FLAGREG.services.util.errors import (
    NoOrientationError, ParseError, TheoremViolation
)
from FLAGREG.services.util.fields import FieldSpec, parse_field
from FLAGREG.services.util.homology import reduced_betti
from FLAGREG.services.util.logutil import LoggingUtil
from FLAGREG.services.util.structure import (
    is_closed_pseudomanifold, is_flag_no_square, is_gorenstein, is_gorenstein_star,
    orientation, parity_orientable, top_cycle_check
)

logger = LoggingUtil.init_logging(__name__,
                                  config.get('logging_level'),
                                  config.get('logging_format')
                                  )

STRUCTURAL_CHECKS = ('structure', 'systole', 'pm', 'gorenstein')
BETTI_CHECKS = ('betti', 'regularity', 'np')
ALL_CHECKS = STRUCTURAL_CHECKS + BETTI_CHECKS + ('bounds',)
NP_MAX = 4


@dataclass(frozen=True)
class AnalysisOptions:
    fields: Tuple[FieldSpec, ...] = (FieldSpec.gf2(),)
    checks: FrozenSet[str] = frozenset(ALL_CHECKS)
    hochster_limit: Optional[int] = None

    @staticmethod
    def from_strings(fields: Iterable[str] = ('gf2',), checks: Iterable[str] = ('all',),
                     hochster_limit: Optional[int] = None) -> 'AnalysisOptions':
        return AnalysisOptions(fields=tuple(parse_field(f) for f in fields),
                               checks=parse_checks(checks),
                               hochster_limit=hochster_limit)


def parse_checks(names: Iterable[str]) -> FrozenSet[str]:
    """`all`, `structural` or individual check names."""
    selected = set()
    for name in names:
        for token in name.split(','):
            token = token.strip().lower()
            if not token:
                continue
            if token == 'all':
                selected.update(ALL_CHECKS)
            elif token == 'structural':
                selected.update(STRUCTURAL_CHECKS)
            elif token in ALL_CHECKS:
                selected.add(token)
            else:
                raise ParseError(f"unknown check '{token}', expected all, structural or one of {list(ALL_CHECKS)}")
    return frozenset(selected)


def jsonable(value: Any) -> Any:
    """Fractions become {num, den}; tuples and sets become lists."""
    if isinstance(value, Fraction):
        return {'num': value.numerator, 'den': value.denominator}
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(v) for v in value)
    if isinstance(value, Verdict):
        return verdict_json(value)
    return value


def verdict_json(verdict: Verdict) -> Dict[str, Any]:
    return {'holds': verdict.holds, 'witness': jsonable(verdict.witness), 'reason': verdict.reason}


def bound_json(report: BoundReport) -> Dict[str, Any]:
    return {
        'name': report.name,
        'hypotheses_checked': [{'name': name, 'holds': holds} for name, holds in report.hypotheses_checked],
        'bound_value': jsonable(report.bound_value),
        'observed_value': jsonable(report.observed_value),
        'holds': report.holds,
        'asserted': report.asserted,
        'violated': report.violated,
        'inconclusive': report.inconclusive,
        'witness': jsonable(report.witness),
        'details': jsonable(report.details),
    }


def _field_report(delta: SimplicialComplex, field_spec: FieldSpec, options: AnalysisOptions,
                  betti_allowed: bool, pseudomanifold: bool, flag: bool) -> Dict[str, Any]:
    checks = options.checks
    report: Dict[str, Any] = {'field': field_spec.name}
    if 'structure' in checks:
        report['reduced_betti'] = list(reduced_betti(delta, field_spec).dims)
    if 'gorenstein' in checks:
        report['gorenstein'] = verdict_json(is_gorenstein(delta, field_spec))
        report['gorenstein_star'] = verdict_json(is_gorenstein_star(delta, field_spec))
    if 'pm' in checks and pseudomanifold:
        try:
            report['top_cycle'] = verdict_json(top_cycle_check(delta, field_spec))
        except NoOrientationError as e:
            report['top_cycle'] = {'holds': False, 'witness': None, 'reason': str(e)}
    if betti_allowed and checks & set(BETTI_CHECKS):
        table = hochster_table(delta, field_spec, limit=options.hochster_limit)
        if 'betti' in checks:
            report['betti_table'] = [{'i': i, 'j': j, 'beta': beta} for i, j, beta in table.sorted_entries()]
        if 'regularity' in checks:
            report['regularity'] = table.regularity
            direct = regularity(delta, field_spec, limit=options.hochster_limit)
            if direct != table.regularity:
                logger.error(f"regularity {direct} disagrees with the table's {table.regularity} over {field_spec}")
                raise TheoremViolation("regularity must equal the maximal j - i of the Betti table")
        if 'np' in checks:
            np_results = {}
            for p in range(1, NP_MAX + 1):
                by_table = np_via_betti(delta, p, table=table)
                if flag and p >= 2 and by_table.satisfied != np_via_cycles(delta, p).satisfied:
                    logger.error(f"N_{p} by Betti numbers and by induced cycles disagree over {field_spec}")
                    raise TheoremViolation("N_p must agree with the induced cycle criterion")
                np_results[f"N_{p}"] = by_table.satisfied
            report['np'] = np_results
            report['linear_strand_length'] = linear_strand_length(table)
    return report


def _bound_reports(delta: SimplicialComplex, field_spec: FieldSpec, options: AnalysisOptions,
                   betti_allowed: bool, flag: bool) -> List[Dict[str, Any]]:
    reports: List[BoundReport] = []
    if betti_allowed:
        if delta.n >= 1:
            reports += [thm1_verdict(delta, p, field_spec, limit=options.hochster_limit) for p in (2, 3)]
        if flag:
            reports.append(thm2_verdict(delta, field_spec, limit=options.hochster_limit))
        if delta.dim == 2:
            reports.append(twelve_vertex_check(delta, field_spec, limit=options.hochster_limit))
    if delta.dim >= 2:
        reports.append(thm4_verdict(delta))
    if delta.dim >= 0:
        reports.append(double_counting_check(delta))
        reports.append(manifold_remark_check(delta, field_spec))
    for report in reports:
        if report.violated:
            logger.error(f"bound {report.name} violated on the analysed complex")
    return [bound_json(report) for report in reports]


def analyze(delta: SimplicialComplex, options: Optional[AnalysisOptions] = None) -> AnalysisReport:
    """Run the requested checks; sections of unrequested checks are left out."""
    options = options or AnalysisOptions()
    checks = options.checks
    f = f_vector(delta)
    data: Dict[str, Any] = {
        'complex': {
            'n': delta.n,
            'labels': list(delta.labels),
            'dim': delta.dim,
            'krull_dim': None if delta.is_void else krull_dim(delta),
            'f_vector': list(f.entries),
            'h_vector': list(h_vector(f).entries),
        },
        'notices': [],
    }
    limit = config.get_int('hochster_limit', 22) if options.hochster_limit is None else options.hochster_limit
    betti_allowed = delta.n <= limit
    if not betti_allowed and checks & set(BETTI_CHECKS + ('bounds',)):
        data['notices'].append(f"Betti-dependent checks skipped: n = {delta.n} exceeds the Hochster limit {limit}")
        logger.info(data['notices'][-1])

    flag = bool(is_flag(delta))
    pseudomanifold = is_closed_pseudomanifold(delta) if delta.dim >= 0 else Verdict(False, reason="dimension -1")
    if 'structure' in checks or 'pm' in checks:
        flags: Dict[str, Any] = {}
        if 'structure' in checks:
            flags['flag'] = verdict_json(is_flag(delta))
            flags['flag_no_square'] = verdict_json(is_flag_no_square(delta))
        if 'pm' in checks:
            flags['pseudomanifold'] = verdict_json(pseudomanifold)
            if pseudomanifold:
                flags['parity_orientable'] = verdict_json(parity_orientable(delta))
                flags['orientable'] = orientation(delta) is not None
        data['flags'] = flags
    if 'systole' in checks:
        if flag:
            data['systole'] = systole(delta)
        else:
            data['notices'].append("systole skipped: the complex is not flag")

    field_checks = set(STRUCTURAL_CHECKS + BETTI_CHECKS) - {'systole'}
    if checks & field_checks:
        data['fields'] = [_field_report(delta, field_spec, options, betti_allowed, bool(pseudomanifold), flag)
                          for field_spec in options.fields]
    if 'bounds' in checks:
        data['bounds'] = _bound_reports(delta, options.fields[0], options, betti_allowed, flag)

    report = AnalysisReport(**data)
    check_consistency(report)
    return report


def check_consistency(report: AnalysisReport) -> None:
    """The regularity of every field section is the maximal j - i of its own table."""
    for section in report.fields or []:
        if section.regularity is None or section.betti_table is None:
            continue
        from_table = max(entry.j - entry.i for entry in section.betti_table)
        if from_table != section.regularity:
            logger.error(f"report regularity {section.regularity} but its table gives {from_table}")
            raise TheoremViolation("analysis report is not self-consistent")


def report_json(report: AnalysisReport) -> Dict[str, Any]:
    return report.dict(exclude_unset=True)


def has_violation(report: AnalysisReport) -> bool:
    return any(bound.violated for bound in report.bounds or [])
