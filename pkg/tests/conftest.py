"""Shared test fixtures and configuration."""

import json

import pytest

from sdgkernel import BatchTable, Point, settings


@pytest.fixture
def ctx():
    """A fresh batch context."""
    return BatchTable()


@pytest.fixture
def eps(ctx):
    """Generator of a one-element batch named eps."""
    return ctx.fresh_batch(1, 'eps')[0]


@pytest.fixture
def basic_picture(eps):
    """The height-eps triangle: a=(-3,0), b=(0,0), b'=(0,eps), c=(4,0)."""
    return {
        'a': Point.of(-3, 0),
        'b': Point.of(0, 0),
        'b_prime': Point.of(0, eps),
        'c': Point.of(4, 0),
    }


@pytest.fixture
def origin():
    return Point.of(0, 0)


@pytest.fixture
def restore_settings():
    """Undo changes tests make to the global settings."""
    saved = dict(vars(settings))
    yield settings
    for key, value in saved.items():
        setattr(settings, key, value)


@pytest.fixture
def basic_scene_data():
    """A planar scene with the height-eps triangle and two touching circles."""
    return {
        'name': 'basic',
        'dim': 2,
        'batches': [{'name': 'eps', 'size': 1}],
        'points': {
            'a': [-3, 0],
            'b': [0, 0],
            'b_prime': [0, {'gen': 'eps'}],
            'c': [4, 0],
            'o': [0, 0],
        },
        'spheres': {
            'A': {'center': [0, 0], 'radius': 2},
            'C': {'center': [3, 0], 'radius': 1},
        },
        'hyperplanes': {
            'H': {'basepoint': [0, -1], 'normal': [0, 1]},
        },
        'surfaces': {
            'circle': {'sphere': 'A', 'm': 12},
            'line': {'hyperplane': 'H', 'm': 4, 'spacing': '1/2'},
        },
        'triples': [
            {'points': ['a', 'b', 'c'], 'expect': {'collinear': True, 'aligned': True, 'triangle': True}},
            {'points': ['a', 'b_prime', 'c'], 'expect': {'collinear': False, 'aligned': False, 'triangle': True}},
        ],
        'touching': [
            {'figures': ['A', 'C']},
        ],
        'huygens': {'center': 'o', 'r': 2, 's': [1, 2], 'm': 4},
        'feet': [
            {'point': 'o', 'surface': 'circle', 'expect': list(range(12))},
        ],
        'parallel': [
            {'surface': 'circle', 's': 1, 't': '1/2'},
            {'surface': 'line', 's': 2},
        ],
        'segments': [['a', 'b_prime', 'c']],
    }


@pytest.fixture
def scene_file(tmp_path, basic_scene_data):
    """The basic scene written to disk."""
    path = tmp_path / 'scene.json'
    path.write_text(json.dumps(basic_scene_data), encoding='utf-8')
    return path


@pytest.fixture
def temp_data_dir(tmp_path):
    """Create a temporary data directory structure."""
    data_dir = tmp_path / 'data'
    reports_dir = data_dir / 'reports'
    data_dir.mkdir()
    reports_dir.mkdir()
    return {
        'data_dir': data_dir,
        'reports_dir': reports_dir,
        'db_path': data_dir / 'sdgverify.db'
    }


@pytest.fixture
def mock_storage_paths(temp_data_dir, monkeypatch):
    """Patch storage module paths to use temp directories."""
    monkeypatch.setattr('server.storage.DATA_DIR', temp_data_dir['data_dir'])
    monkeypatch.setattr('server.storage.REPORTS_DIR', temp_data_dir['reports_dir'])
    monkeypatch.setattr('server.storage.DB_PATH', temp_data_dir['db_path'])
    return temp_data_dir


@pytest.fixture
def initialized_db(mock_storage_paths):
    """Initialize a test database with schema."""
    from server.storage import init_db
    init_db()
    return mock_storage_paths
