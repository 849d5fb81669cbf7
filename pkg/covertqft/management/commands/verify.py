import logging
from fractions import Fraction
from itertools import combinations_with_replacement

from django.conf import settings
from django.core.management.base import CommandError

from covertqft.cli import VERIFICATION_FAILURE, CoverTQFTCommand
from covertqft.hurwitz import (
    BranchData, burnside, dijkgraaf_data, hurwitz_bruteforce, hurwitz_connected,
    hurwitz_disconnected,
)
from covertqft.partitions import Partition, enumerate_partitions
from covertqft.serializers import VerificationReportSerializer, VerifyRequestSerializer
from covertqft.symchar import character_table, verify_orthogonality
from covertqft.theoryu import (
    aspinwall_morrison, assemble_cap, cap_agrees, check_cap_coherence, check_closed_antid,
    check_structure_constants, connected_cap, cy_cap_connected, recursive_cap, semisimple_data_antid,
    verify_fundamental_relation, verify_gluing_antid, verify_relfin,
)
from covertqft.tqftcore import check_frobenius

logger = logging.getLogger(__name__)


def _check(name, passed, **detail):
    return {'name': name, 'passed': bool(passed), 'detail': detail}


class Command(CoverTQFTCommand):
    help = 'Run a verification suite; exits 1 when any exact check fails'

    request_serializer_class = VerifyRequestSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('suite', help='relfin, gluing, burnside, aspinwall, cycap, orthogonality, '
                                          'frobenius-vs-bruteforce, fundamental or all')
        parser.add_argument('--d', type=int, help='Restrict the suite to one degree')
        parser.add_argument('--g', type=int, help='Restrict the suite to one base genus')
        parser.add_argument('--order', type=int, help='Truncation order of u-series')
        parser.add_argument('--dmax', type=int, help='Largest degree for aspinwall (default 6)')
        parser.add_argument('--samples', type=int, help='Random gluing samples per degree (default 50)')
        parser.add_argument('--seed', type=int, help='Seed of the random gluing samples')

    def run(self, config):
        suite = config['suite']
        names = [s for s in self.suites() if s != 'all'] if suite == 'all' else [suite]
        checks = []
        for name in names:
            logger.info('running suite %s', name)
            results = self.suites()[name](config if suite != 'all' else config.defaults())
            failed = sum(1 for check in results if not check['passed'])
            logger.info('suite %s: %s checks, %s failed', name, len(results), failed)
            checks.extend(results)
        report = {'suite': suite, 'passed': all(c['passed'] for c in checks), 'checks': checks}
        return VerificationReportSerializer(report).data

    def after_emit(self, data, config):
        if not data['passed']:
            first = next(c for c in data['checks'] if not c['passed'])
            raise CommandError(f"verification failed: {first['name']}", returncode=VERIFICATION_FAILURE)

    def render_text(self, data):
        for check in data['checks']:
            if check['passed']:
                yield self.style.SUCCESS(f"PASS {check['name']}")
            else:
                yield self.style.ERROR(f"FAIL {check['name']} {check['detail']}")
        yield 'PASS' if data['passed'] else 'FAIL'

    def suites(self):
        return {
            'relfin': self.relfin,
            'gluing': self.gluing,
            'burnside': self.burnside,
            'aspinwall': self.aspinwall,
            'cycap': self.cycap,
            'orthogonality': self.orthogonality,
            'frobenius-vs-bruteforce': self.frobenius_vs_bruteforce,
            'fundamental': self.fundamental,
        }

    def relfin(self, config):
        checks = []
        for d in self._degrees(config, range(2, 6)):
            residual = verify_relfin(d, config.order)
            checks.append(_check(f'relfin d={d}', residual.is_zero(),
                                 d=d, order=config.order, residual=str(residual)))
        return checks

    def gluing(self, config):
        checks = []
        for d in self._degrees(config, range(1, 5)):
            report = verify_gluing_antid(d, config['samples'], config['seed'])
            checks.append(_check(f'gluing d={d}', report.passed,
                                 d=d, identities=report.checked, failures=report.failures[:5]))
            for label, ss in (('dijkgraaf', dijkgraaf_data(d)), ('antidiagonal', semisimple_data_antid(d))):
                frobenius = check_frobenius(ss)
                checks.append(_check(f'frobenius {label} d={d}', frobenius.passed,
                                     d=d, failures={k: str(v) for k, v in frobenius.failures.items()}))
            mismatches = check_structure_constants(d)
            checks.append(_check(f'structure constants d={d}', not mismatches,
                                 d=d, mismatches=[f'{a.text()}*{b.text()}' for a, b in mismatches]))
        genera = [config['g']] if config.get('g') is not None else range(4)
        for d in self._degrees(config, range(1, 6)):
            mismatches = check_closed_antid(d, genera)
            checks.append(_check(f'closed invariants d={d}', not mismatches,
                                 d=d, mismatches=[list(point) for point in mismatches[:5]]))
        return checks

    def burnside(self, config):
        if config.get('d') is not None:
            grid = [(config['d'], config['g'])]
        else:
            grid = [(d, g) for d in range(1, 9) for g in range(4)]
        checks = []
        for d, g in grid:
            formula = burnside(d, g)
            frobenius = hurwitz_disconnected(BranchData(d, g)).value
            detail = {'d': d, 'g': g, 'formula': str(formula), 'frobenius': str(frobenius)}
            passed = formula == frobenius
            if d <= settings.COVERTQFT_CAPS['bruteforce'] and g <= 2:
                brute = hurwitz_bruteforce(BranchData(d, g)).value
                detail['bruteforce'] = str(brute)
                passed = passed and brute == formula
            checks.append(_check(f'burnside d={d} g={g}', passed, **detail))
        return checks

    def aspinwall(self, config):
        dmax = config['dmax']
        order = max(config.order, 2 * dmax)
        values = aspinwall_morrison(dmax, order)
        return [
            _check(f'aspinwall d={d}', value == Fraction(1, d ** 3),
                   d=d, value=str(value), expected=str(Fraction(1, d ** 3)))
            for d, value in enumerate(values, start=1)
        ]

    def cycap(self, config):
        order = config.order
        checks = []
        for d in self._degrees(config, range(1, 5)):
            report = check_cap_coherence(d, order)
            checks.append(_check(f'cap coherence d={d}', report.passed,
                                 d=d, mismatches=[f'{side} {eta.text()}' for side, eta in report.mismatches]))
            derived = recursive_cap(d, order)
            checks.append(_check(f'recursive cap d={d}', derived.agrees_with(cy_cap_connected(d, order)),
                                 d=d, derived=str(derived)))
        for d in self._degrees(config, range(1, 7)):
            failures = [
                f'{side} {eta.text()}'
                for side in ('s1', 's2')
                for eta in enumerate_partitions(d)
                if not cap_agrees(assemble_cap(d, eta, order, side), d, eta, order, side)
            ]
            checks.append(_check(f'cap exponentiation d={d}', not failures, d=d, failures=failures))
            nonvanishing = [
                f'{side} {eta.text()}'
                for side in ('s1', 's2')
                for eta in enumerate_partitions(d)
                if len(eta) > 1 and not connected_cap(eta, order, side).is_zero()
            ]
            single = connected_cap(Partition.one_row(d), order, 's1')
            checks.append(_check(
                f'connected caps d={d}',
                not nonvanishing and (single - cy_cap_connected(d, order).antidiagonal()).is_zero(),
                d=d, nonvanishing=nonvanishing,
            ))
        return checks

    def orthogonality(self, config):
        store = config.store()
        checks = []
        for d in self._degrees(config, range(1, 9)):
            report = verify_orthogonality(d, character_table(d, jobs=config.jobs, store=store))
            checks.append(_check(
                f'orthogonality d={d}', report.passed, d=d,
                rows=[f'{a.text()},{b.text()}' for a, b in report.row_failures],
                columns=[f'{a.text()},{b.text()}' for a, b in report.column_failures],
            ))
        return checks

    def frobenius_vs_bruteforce(self, config):
        """Character formula and inclusion-exclusion against tuple enumeration."""
        degrees = self._degrees(config, range(1, 5))
        genera = [config['g']] if config.get('g') is not None else range(3)
        max_classes, max_simple = 3, 3
        checks = []
        for d in degrees:
            for g in genera:
                cases, mismatches = 0, []
                for count in range(max_classes + 1):
                    for classes in combinations_with_replacement(enumerate_partitions(d), count):
                        for s in range(max_simple + 1):
                            b = BranchData(d, g, classes, s)
                            cases += 1
                            if hurwitz_disconnected(b).value != hurwitz_bruteforce(b).value:
                                mismatches.append(f'disconnected {b.as_request()}')
                            transitive = hurwitz_bruteforce(b, require_transitive=True).value
                            if hurwitz_connected(b).value != transitive:
                                mismatches.append(f'connected {b.as_request()}')
                checks.append(_check(f'frobenius-vs-bruteforce d={d} g={g}', not mismatches,
                                     d=d, g=g, cases=cases, mismatches=mismatches[:5]))
        return checks

    def fundamental(self, config):
        checks = []
        for d in self._degrees(config, range(2, 5)):
            residual = verify_fundamental_relation(d, config.order)
            checks.append(_check(f'fundamental relation d={d}', residual.is_zero(),
                                 d=d, order=config.order, residual=str(residual)))
        return checks

    @staticmethod
    def _degrees(config, default):
        if config.get('d') is not None:
            return [config['d']]
        return list(default)
