from covertqft.cli import CoverTQFTCommand
from covertqft.hurwitz import BranchData, cover_genus, hurwitz_bruteforce, hurwitz_value
from covertqft.serializers import HurwitzRecordSerializer, HurwitzRequestSerializer


class Command(CoverTQFTCommand):
    help = 'Weighted Hurwitz number of degree d covers of a genus g surface'

    request_serializer_class = HurwitzRequestSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--d', type=int, required=True, help='Degree of the cover')
        parser.add_argument('--g', type=int, help='Genus of the base (default 0)')
        parser.add_argument('--class', dest='classes', action='append',
                            help='Ramification profile, e.g. 2+1; repeatable')
        parser.add_argument('--simple', type=int, help='Number of simple branch points')
        parser.add_argument('--connected', action='store_true', help='Count connected covers only')
        parser.add_argument('--bruteforce', action='store_true',
                            help='Enumerate monodromy tuples instead of using characters')

    def run(self, config):
        b = BranchData(config['d'], config['g'], tuple(config['classes']), config['simple'])
        connected = config['connected']
        if config['bruteforce']:
            result = hurwitz_bruteforce(b, require_transitive=connected)
            method = 'bruteforce'
        else:
            result = hurwitz_value(b, connected=connected, store=config.store())
            method = 'inclusion-exclusion' if connected else 'frobenius'
        record = {
            'd': b.d,
            'g': b.g,
            'classes': list(b.canonical().classes),
            's': b.s,
            'connected': connected,
            'method': method,
            'cover_genus': cover_genus(b),
            'value': result.value,
        }
        return HurwitzRecordSerializer(record).data

    def render_text(self, data):
        yield data['value']
