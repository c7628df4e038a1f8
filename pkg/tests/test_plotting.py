"""Tests for SVG rendering of planar scenes."""

import xml.etree.ElementTree as ET

import pytest

from sdgkernel import (
    OVERLAYS,
    UnsupportedDimensionError,
    UsageError,
    parse_scene,
    render_svg,
    write_svg,
)

SVG = '{http://www.w3.org/2000/svg}'


@pytest.fixture
def scene(basic_scene_data):
    return parse_scene(basic_scene_data)


def _classes(svg: str) -> list:
    root = ET.fromstring(svg)
    return [el.get('class') for el in root.iter() if el.get('class')]


class TestRenderSvg:
    """Deterministic SVG output."""

    def test_is_svg(self, scene):
        svg = render_svg(scene)
        root = ET.fromstring(svg)
        assert root.tag == f'{SVG}svg'
        assert root.find(f'{SVG}title').text == 'basic'

    def test_deterministic(self, scene, basic_scene_data):
        assert render_svg(scene) == render_svg(parse_scene(basic_scene_data))

    def test_label_shows_nilpotent_part(self, scene):
        assert 'b_prime (0, eps)' in render_svg(scene)

    def test_six_decimal_coordinates(self, scene):
        root = ET.fromstring(render_svg(scene, overlays=[]))
        circle = root.find(f'{SVG}g/{SVG}circle')
        assert len(circle.get('cx').split('.')[1]) == 6

    def test_overlays_can_be_disabled(self, scene):
        classes = _classes(render_svg(scene, overlays=[]))
        assert 'label' not in classes
        assert 'wave' not in classes
        assert 'sample' not in classes
        assert classes.count('sphere') == 2
        assert classes.count('hyperplane') == 1

    def test_huygens_overlay(self, scene):
        classes = _classes(render_svg(scene, overlays=['huygens']))
        # m sources times two step lengths
        assert classes.count('wave') == 8
        assert classes.count('front') == 2

    def test_surface_overlay(self, scene):
        classes = _classes(render_svg(scene, overlays=['surfaces']))
        assert classes.count('sample') == 16
        assert classes.count('normal') == 16

    def test_touching_overlay(self, scene):
        classes = _classes(render_svg(scene, overlays=['touching']))
        assert classes.count('touch') == 1

    def test_unknown_overlay(self, scene):
        with pytest.raises(UsageError):
            render_svg(scene, overlays=['grid'])

    def test_planar_only(self, basic_scene_data):
        three_d = {'name': 'solid', 'dim': 3, 'points': {'a': [0, 0, 0]}}
        with pytest.raises(UnsupportedDimensionError):
            render_svg(parse_scene(three_d))

    def test_all_overlays_by_default(self, scene):
        assert render_svg(scene) == render_svg(scene, overlays=list(OVERLAYS))

    def test_write_svg(self, scene, tmp_path):
        path = write_svg(tmp_path / 'scene.svg', scene)
        assert path.read_text(encoding='utf-8') == render_svg(scene)
