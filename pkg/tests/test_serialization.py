import json
from fractions import Fraction

import pytest

from src.errors import InstanceError
from src.generators import gen_disk, gen_kpartite, gen_random, gen_unit_disk
from src.geometry import DemandKind, Point, Solution
from src.serialization import (
    dumps_instance,
    dumps_solution,
    load_instance,
    load_solution,
    parse_instance,
    parse_solution,
    save_instance,
    save_solution,
)


@pytest.mark.parametrize(
    "instance",
    [
        gen_random(7, 0.5, seed=3),
        gen_random(5, 1.0, seed=1),
        gen_unit_disk(6, Fraction(5, 2), seed=2),
        gen_disk(6, 1, radii=(1, 3)),
        gen_kpartite(6, 2, seed=4),
    ],
)
def test_instance_round_trip(tmp_path, instance):
    path = save_instance(instance, tmp_path / "nested" / "inst.json")
    assert load_instance(path) == instance


def test_derived_kinds_do_not_store_demands():
    payload = json.loads(dumps_instance(gen_random(4, 1.0, seed=0)))
    assert payload["kind"] == "uniform"
    assert "demands" not in payload


def test_fractions_are_written_as_strings():
    text = '{"version": 1, "points": [{"id": "a", "x": "1/2", "y": 0}, {"id": "b", "x": 3, "y": "6/2"}], "demands": [["a", "b"]]}'
    instance = parse_instance(text)

    assert instance.point("a").x == Fraction(1, 2)
    assert instance.point("b").y == 3 and isinstance(instance.point("b").y, int)
    assert json.loads(dumps_instance(instance))["points"][0]["x"] == "1/2"


def test_unknown_field_is_located():
    text = '{"version": 1, "points": [{"id": "a", "x": 0, "y": 0, "z": 1}]}'
    with pytest.raises(InstanceError) as exc:
        parse_instance(text)
    assert exc.value.field == "points[0].z"


def test_float_coordinates_rejected():
    with pytest.raises(InstanceError):
        parse_instance('{"points": [{"id": "a", "x": 0.5, "y": 0}]}')


def test_bad_rational_is_located():
    with pytest.raises(InstanceError) as exc:
        parse_instance('{"points": [{"id": "a", "x": "half", "y": 0}]}')
    assert exc.value.field == "points[0].x"


def test_invalid_json_reports_position():
    with pytest.raises(InstanceError) as exc:
        parse_instance('{\n  "points": [\n    {"id": "a",}\n  ]\n}', source="broken.json")
    assert exc.value.field == "broken.json"
    assert "line 3" in exc.value.message


def test_semantic_errors():
    with pytest.raises(InstanceError) as exc:
        parse_instance('{"kind": "disk", "points": [{"id": "a", "x": 0, "y": 0}]}')
    assert exc.value.field == "points"

    with pytest.raises(InstanceError) as exc:
        parse_instance('{"kind": "uniform", "points": [{"id": "a", "x": 0, "y": 0}], "demands": []}')
    assert exc.value.field == "demands"

    with pytest.raises(InstanceError):
        parse_instance('{"points": [{"id": "a", "x": 0, "y": 0}, {"id": "a", "x": 1, "y": 1}]}')


def test_missing_file(tmp_path):
    with pytest.raises(InstanceError) as exc:
        load_instance(tmp_path / "absent.json")
    assert exc.value.field == "path"


def test_solution_round_trip(tmp_path):
    solution = Solution((Point("q0", 1, 2), Point("q1", Fraction(3, 2), 0)))
    path = save_solution(solution, tmp_path / "sol.json")

    assert load_solution(path) == solution
    assert json.loads(dumps_solution(solution))["points"][1]["x"] == "3/2"


def test_empty_solution():
    assert len(parse_solution('{"version": 1, "points": []}')) == 0
