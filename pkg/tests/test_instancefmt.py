"""Parsing and serialization of gipf-1 instance documents."""

import json
import random

import pytest

from gimpl import (
    ExtValue,
    FormatError,
    GraphicalGame,
    InstanceDoc,
    PaymentPromise,
    RectRegion,
    parse_instance,
    serialize_instance,
)

from _support import random_game

EX1_DOCUMENT = {
    "format": "gipf-1",
    "kind": "normal",
    "players": [
        {"name": "p1", "strategies": ["s1", "s2", "s3"]},
        {"name": "p2", "strategies": ["t1", "t2"]},
    ],
    "utilities": [
        {"player": 0, "profile": [0, 0], "value": 1},
        {"player": 0, "profile": [0, 1], "value": 1},
        {"player": 0, "profile": [1, 0], "value": 2},
        {"player": 0, "profile": [2, 1], "value": 1},
        {"player": 1, "profile": [0, 0], "value": 1},
        {"player": 1, "profile": [0, 1], "value": 1},
        {"player": 1, "profile": [1, 0], "value": 1},
        {"player": 1, "profile": [1, 1], "value": 1},
    ],
    "region": {"sets": [[0, 2], [0]]},
    "budget": "11/10",
    "promise": [
        {"player": 0, "profile": [0, 0], "value": 1},
        {"player": 1, "profile": [0, 0], "value": "1/10"},
    ],
}


def test_parse_worked_example_document(ex1, ex1_promise):
    doc = parse_instance(json.dumps(EX1_DOCUMENT))
    assert doc.game == ex1
    assert doc.game.utility(0, (1, 0)) == ExtValue(2)
    assert doc.region == RectRegion.make([[0, 2], [0]])
    assert doc.budget == ExtValue("11/10")
    assert doc.promise == ex1_promise


def test_missing_utility_entries_read_zero():
    doc = parse_instance(json.dumps(EX1_DOCUMENT))
    # (s2, t2) for p1 is not in the document
    assert doc.game.utility(0, (1, 1)) == ExtValue(0)


def test_empty_desired_set_is_an_error():
    bad = dict(EX1_DOCUMENT, region={"sets": [[0, 2], []]})
    with pytest.raises(FormatError, match="empty desired set"):
        parse_instance(json.dumps(bad))


def test_negative_promise_is_an_error():
    bad = dict(EX1_DOCUMENT, promise=[{"player": 0, "profile": [0, 0], "value": -1}])
    with pytest.raises(FormatError, match="negative promise"):
        parse_instance(json.dumps(bad))


def test_infinite_utility_is_an_error():
    bad = dict(EX1_DOCUMENT)
    bad["utilities"] = bad["utilities"] + [
        {"player": 0, "profile": [2, 0], "value": "inf"}
    ]
    with pytest.raises(FormatError, match="infinite utility"):
        parse_instance(json.dumps(bad))


def test_malformed_documents():
    with pytest.raises(FormatError, match="malformed JSON"):
        parse_instance("{nope")
    with pytest.raises(FormatError, match="format"):
        parse_instance(json.dumps({"format": "gipf-0"}))
    with pytest.raises(FormatError, match="out of range"):
        parse_instance(
            json.dumps(
                dict(
                    EX1_DOCUMENT,
                    utilities=[{"player": 5, "profile": [0, 0], "value": 1}],
                )
            )
        )
    with pytest.raises(FormatError):
        parse_instance(
            json.dumps(
                dict(
                    EX1_DOCUMENT,
                    utilities=[{"player": 0, "profile": [0, 9], "value": 1}],
                )
            )
        )
    with pytest.raises(FormatError, match="floats|ints"):
        parse_instance(
            json.dumps(
                dict(
                    EX1_DOCUMENT,
                    utilities=[{"player": 0, "profile": [0, 0], "value": 1.5}],
                )
            )
        )


def test_round_trip_normal(ex1, ex1_promise):
    doc = InstanceDoc(
        game=ex1,
        region=RectRegion.make([[0, 2], [0]]),
        budget=ExtValue("11/10"),
        promise=ex1_promise,
    )
    again = parse_instance(serialize_instance(doc))
    assert again == doc
    # a second serialize round is byte-identical
    assert serialize_instance(again) == serialize_instance(doc)


def test_round_trip_random_games():
    rng = random.Random(4242)
    for _ in range(15):
        game = random_game(rng)
        doc = InstanceDoc(game=game)
        assert parse_instance(serialize_instance(doc)) == doc


def test_round_trip_graphical():
    gg = GraphicalGame.make(
        ["a0", "C0"],
        [["T", "F"], ["T", "F"]],
        [(0, 1)],
        [{(0, 0): 1, (1, 1): "3/2"}, {}],
    )
    promise = PaymentPromise.make(gg, [{(0, 1): "inf"}, {(1, 0): "1/6"}])
    doc = InstanceDoc(
        game=gg,
        region=RectRegion.make([[0], [0, 1]]),
        budget=ExtValue("1/2"),
        promise=promise,
    )
    payload = serialize_instance(doc)
    again = parse_instance(payload)
    assert again == doc
    raw = json.loads(payload)
    assert raw["kind"] == "graphical"
    assert raw["edges"] == [[0, 1]]


def test_graphical_needs_edges_and_normal_rejects_them():
    gg_doc = {
        "format": "gipf-1",
        "kind": "graphical",
        "players": [{"name": "a", "strategies": ["T", "F"]}],
        "utilities": [],
    }
    with pytest.raises(FormatError, match="edges"):
        parse_instance(json.dumps(gg_doc))
    bad_normal = dict(EX1_DOCUMENT, edges=[[0, 1]])
    with pytest.raises(FormatError, match="edges"):
        parse_instance(json.dumps(bad_normal))
