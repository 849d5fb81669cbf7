from covertqft.cli import CoverTQFTCommand
from covertqft.serializers import InvariantRecordSerializer, InvariantRequestSerializer
from covertqft.theoryu import (
    InvariantKey, antid_closed, cy_cap, level00_coefficient, pair_series, semisimple_data_antid,
)


class Command(CoverTQFTCommand):
    help = 'Closed-form invariants: antid, cycap, pants or level00'

    request_serializer_class = InvariantRequestSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('mode', help='One of antid, cycap, pants, level00')
        parser.add_argument('--d', type=int, required=True, help='Degree')
        parser.add_argument('--g', type=int, help='Genus (antid, level00)')
        parser.add_argument('--k1', type=int, help='First level (antid)')
        parser.add_argument('--k2', type=int, help='Second level (antid)')
        parser.add_argument('--eta', help='Boundary profile (cycap)')
        parser.add_argument('--class', dest='classes', action='append',
                            help='Boundary profile (level00); repeatable')
        parser.add_argument('--side', help='s1 for the (0,-1) cap, s2 for the (-1,0) cap (cycap)')
        parser.add_argument('--order', type=int, help='Truncation order of u-series')
        parser.add_argument('--as-u-series', dest='as_u_series', action='store_true',
                            help='Also expand the Q-dependence as a u-series')
        parser.add_argument('--at-Q', dest='at_q', type=int, help='Evaluate at Q = 1')

    def run(self, config):
        mode = config['mode']
        if mode in ('antid', 'level00'):
            return self._antidiagonal(config)
        if mode == 'cycap':
            series = cy_cap(config['d'], config['eta'], config.order, config['side'])
            key = InvariantKey(config['d'], 0, 0, -1, (config['eta'],))
            if config['side'] == 's2':
                key = InvariantKey(config['d'], 0, -1, 0, (config['eta'],))
        else:
            series = pair_series(config['d'], config.order)
            key = InvariantKey(config['d'])
        record = {
            'mode': mode,
            'key': key.as_dict(),
            'convention': None,
            'value': str(series),
            's_part': str(series.s_part),
            'q_part': None,
            'u_series': str(series.u_part),
            'at_q_one': None,
        }
        return InvariantRecordSerializer(record).data

    def _antidiagonal(self, config):
        d = config['d']
        if config['mode'] == 'antid':
            value = antid_closed(d, config['g'], config['k1'], config['k2'])
            key = InvariantKey(d, config['g'], config['k1'], config['k2'])
        else:
            classes = tuple(config['classes'])
            value = level00_coefficient(d, config['g'], classes)
            key = InvariantKey(d, config['g'], inputs=classes)
        record = {
            'mode': config['mode'],
            'key': key.as_dict(),
            'convention': semisimple_data_antid(d).convention,
            'value': str(value),
            's_part': str(value.s_factor),
            'q_part': str(value.q_part),
            'u_series': str(value.as_u_series(config.order)) if config['as_u_series'] else None,
            'at_q_one': str(value.at_q_one()) if config.get('at_q') else None,
        }
        return InvariantRecordSerializer(record).data

    def render_text(self, data):
        if data['at_q_one'] is not None:
            yield data['at_q_one']
        else:
            yield data['value']
        if data['u_series'] is not None and data['mode'] in ('antid', 'level00'):
            yield data['u_series']
