import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyconvex import examples as ex
from polyconvex.instance_file import InstanceParseError, dumps, loads, to_dict
from polyconvex.verify import random_instance


def base_doc():
    return to_dict(ex.abs_instance())


@pytest.mark.parametrize("name", sorted(ex.BUILTIN))
def test_builtin_round_trip(name):
    I = ex.BUILTIN[name]()
    assert dumps(loads(dumps(I))) == dumps(I)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["closed-polyhedral", "partially-open"]),
       st.sampled_from([(1,), (1, 1), (2,), (2, 1)]))
def test_random_round_trip(seed, profile, dims):
    I = random_instance(seed, profile, dims)
    J = loads(dumps(I))
    assert J.dims == I.dims and J.S.same_span(I.S)
    assert dumps(J) == dumps(I)


def test_float_rejected_with_path():
    doc = json.dumps(base_doc()).replace('"offset": "0"', '"offset": 0.5', 1)
    with pytest.raises(InstanceParseError) as e:
        loads(doc)
    assert e.value.where == "$.blocks[0].pieces[0].offset"
    assert "float" in e.value.message


def test_decimal_string_rejected():
    doc = base_doc()
    doc["blocks"][0]["pieces"][0]["slope"][0] = "0.5"
    with pytest.raises(InstanceParseError) as e:
        loads(json.dumps(doc))
    assert e.value.where == "$.blocks[0].pieces[0].slope[0]"


def test_fractions_accepted():
    doc = base_doc()
    doc["blocks"][0]["pieces"][0]["offset"] = "-3/4"
    I = loads(json.dumps(doc))
    assert I.blocks[0].pieces[0].offset == -0.75


@pytest.mark.parametrize(
    "mutate,where",
    [
        (lambda d: d.pop("version"), "$"),
        (lambda d: d.update(version=7), "$.version"),
        (lambda d: d.update(blocks=[]), "$.blocks"),
        (lambda d: d["blocks"][0].update(dim=0), "$.blocks[0].dim"),
        (lambda d: d["blocks"][0]["pieces"][0].update(slope=["1", "2"]), "$.blocks[0].pieces[0].slope"),
        (lambda d: d.update(subspace_basis=[["1", "1"]]), "$.subspace_basis[0]"),
    ],
)
def test_structural_errors_name_position(mutate, where):
    doc = base_doc()
    mutate(doc)
    with pytest.raises(InstanceParseError) as e:
        loads(json.dumps(doc))
    assert e.value.where == where


def test_bad_relation():
    doc = to_dict(ex.example_22_instance())
    doc["blocks"][0]["domain"][0]["constraints"][0]["relation"] = "ge"
    with pytest.raises(InstanceParseError) as e:
        loads(json.dumps(doc))
    assert e.value.where.endswith(".relation")


def test_syntax_error_reports_line():
    with pytest.raises(InstanceParseError) as e:
        loads('{"version": 1,\n  "blocks": [}')
    assert e.value.where.startswith("line 2")
