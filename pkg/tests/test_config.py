import json

import pytest

from superjordan.config import ConfigError, build_map, build_ring, load_config, resolve_map
from superjordan.maps import BiadditiveMap


def _write(tmp_path, doc, name="cfg.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return p


def test_nested_ring_expression():
    built = build_ring({"kind": "trivial_extension", "base": {"kind": "zn", "n": 4}, "module": {"kind": "zn", "m": 2}})
    assert built.ring.order == 8
    assert built.construction.module.order == 2


@pytest.mark.parametrize(
    "expr,where",
    [
        ({"kind": "trivial_extension", "base": {"kind": "zn", "n": 3}, "module": {"kind": "zn"}}, "ring.module.m"),
        ({"kind": "zn", "n": 0}, "ring.n"),
        ({"kind": "zn", "n": "3"}, "ring.n"),
        ({"kind": "pentagon"}, "ring.kind"),
        ({"kind": "triangular", "left": {"kind": "zn", "n": 2}, "right": {"kind": "zn", "n": 2}}, "ring.module"),
        ({"kind": "upper_triangular", "base": {"kind": "zn", "n": 2}, "n": 0}, "ring.n"),
    ],
)
def test_error_locations(expr, where):
    with pytest.raises(ConfigError) as info:
        build_ring(expr)
    assert info.value.where == where


def test_module_order_mismatch_is_located():
    with pytest.raises(ConfigError) as info:
        build_ring({"kind": "trivial_extension", "base": {"kind": "zn", "n": 2}, "module": {"kind": "zn", "m": 4}})
    assert info.value.where == "ring.module"


def test_invalid_table_ring_reports_witness():
    # 1 is not a two-sided identity of this table
    with pytest.raises(ConfigError) as info:
        build_ring({"kind": "table", "factors": [2], "structure": [[[0]]], "one": [1]})
    assert info.value.where == "ring"


def test_map_documents():
    ring = build_ring({"kind": "zn", "n": 3}).ring
    assert build_map({"images": [[2]], "degree": 0}, ring).degree == 0
    assert isinstance(build_map({"kind": "biadditive", "images": [[[1]]]}, ring).obj, BiadditiveMap)
    with pytest.raises(ConfigError) as info:
        build_map({"images": [[1]], "degree": 2}, ring, where="maps.d")
    assert info.value.where == "maps.d.degree"
    with pytest.raises(ConfigError) as info:
        build_map({"images": [[1, 1]]}, ring, where="maps.d")
    assert info.value.where == "maps.d.images"


def test_ill_defined_map_images():
    ring = build_ring({"kind": "product", "left": {"kind": "zn", "n": 2}, "right": {"kind": "zn", "n": 4}}).ring
    # the order-2 generator cannot go to an element of order 4
    with pytest.raises(ConfigError) as info:
        build_map({"images": [[0, 1], [0, 1]]}, ring, where="m")
    assert info.value.where == "m.images"
    assert build_map({"images": [[0, 2], [0, 1]]}, ring).obj.images == ((0, 2), (0, 1))


def test_json_syntax_error_has_line_and_column(tmp_path):
    p = _write(tmp_path, '{"ring": {"kind": "zn",\n "n": }}')
    with pytest.raises(ConfigError) as info:
        load_config(p)
    assert info.value.where.endswith(":2:7")


def test_resolve_map_by_name_and_path(tmp_path):
    cfg_path = _write(tmp_path, {"ring": {"kind": "zn", "n": 3}, "maps": {"zero": {"images": [[0]]}}})
    map_path = _write(tmp_path, {"images": [[1]]}, "identity.json")
    cfg = load_config(cfg_path)
    assert resolve_map(cfg, "zero").name == "zero"
    parsed = resolve_map(cfg, str(map_path))
    assert parsed.name == "identity"
    assert parsed.obj.images == ((1,),)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "absent.json")
