from covertqft.cli import CoverTQFTCommand
from covertqft.hurwitz import BranchData, hurwitz_value
from covertqft.serializers import WarmCacheRequestSerializer, WarmCacheSummarySerializer
from covertqft.symchar import character_table

# Burnside records are warmed for base genus 0..BURNSIDE_GENERA-1
BURNSIDE_GENERA = 3


class Command(CoverTQFTCommand):
    help = 'Precompute character tables and unramified Hurwitz records into the result cache'

    request_serializer_class = WarmCacheRequestSerializer

    def add_command_arguments(self, parser):
        parser.add_argument('--dmax', type=int, required=True, help='Largest degree to precompute')
        parser.add_argument('--clear', action='store_true', help='Empty the cache first')

    def run(self, config):
        store = config.store()
        if config['clear']:
            store.clear()
            self.stderr.write('Cleared the result cache')

        tables = []
        records = 0
        for d in range(1, config['dmax'] + 1):
            character_table(d, jobs=config.jobs, store=store)
            tables.append(d)
            for g in range(BURNSIDE_GENERA):
                hurwitz_value(BranchData(d, g), store=store)
                records += 1
            self.stderr.write(f'Warmed d={d}')

        summary = {
            'location': str(store.location),
            'cleared': config['clear'],
            'character_tables': tables,
            'hurwitz_records': records,
        }
        return WarmCacheSummarySerializer(summary).data

    def render_text(self, data):
        yield self.style.SUCCESS(
            f"Cached {len(data['character_tables'])} character tables and "
            f"{data['hurwitz_records']} Hurwitz records in {data['location']}"
        )
