import tempfile

from django.test import SimpleTestCase

from covertqft.store import ResultStore, canonical_json, content_hash


class ResultStoreTestCase(SimpleTestCase):
    """Test cases for the content-addressed result cache."""

    def setUp(self):
        """Set up test data."""
        self.directory = tempfile.TemporaryDirectory()
        self.addCleanup(self.directory.cleanup)
        self.store = ResultStore(self.directory.name)
        self.request = {'d': 3, 'g': 1, 'classes': ['2+1'], 's': 0, 'connected': False}

    def test_set_then_get(self):
        """Test that a stored record is read back unchanged."""
        record = {**self.request, 'value': '9/2'}
        self.store.set('hurwitz', self.request, record)
        self.assertEqual(ResultStore(self.directory.name).get('hurwitz', self.request), record)

    def test_miss_returns_none(self):
        """Test that an unknown request is a miss."""
        self.assertIsNone(self.store.get('hurwitz', self.request))

    def test_keys_ignore_dict_order(self):
        """Test that keys depend on content, not on insertion order."""
        shuffled = dict(reversed(list(self.request.items())))
        self.assertEqual(ResultStore.make_key('hurwitz', self.request), ResultStore.make_key('hurwitz', shuffled))
        self.assertNotEqual(ResultStore.make_key('hurwitz', self.request),
                            ResultStore.make_key('chartable', self.request))

    def test_disabled_store(self):
        """Test that a disabled store neither reads nor writes."""
        store = ResultStore.disabled()
        store.set('hurwitz', self.request, {'value': '1'})
        self.assertIsNone(store.get('hurwitz', self.request))

    def test_clear(self):
        """Test that clear() empties the cache directory."""
        self.store.set('hurwitz', self.request, {'value': '1'})
        self.store.clear()
        self.assertIsNone(self.store.get('hurwitz', self.request))

    def test_canonical_json(self):
        """Test the canonical JSON form and its hash."""
        self.assertEqual(canonical_json({'b': 1, 'a': [1, 2]}), '{"a":[1,2],"b":1}')
        self.assertEqual(
            content_hash({'cols': ['2', '1+1'], 'd': 2, 'matrix': [[1, 1], [-1, 1]], 'rows': ['2', '1+1']}),
            'bd2b02ebcc750b56d4b0c51bcbd898d29e4917fd762cbb77afb59ee182704805',
        )
