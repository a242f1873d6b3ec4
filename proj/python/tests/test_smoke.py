import os
import pathlib

import pytest

import doctheory

FIXTURES = pathlib.Path(os.environ.get("DOCTHEORY_FIXTURES", pathlib.Path(__file__).parents[2] / "fixtures"))


def read(rel):
    return (FIXTURES / rel).read_text()


def test_parse_and_print_round_trip():
    th = doctheory.Theory.parse(read("theories/order_fulfillment.dth"))
    assert th.name == "order_fulfillment"
    assert "Order" in th.forms
    assert "Status" in th.fields
    assert doctheory.Theory.parse(th.print()) == th


def test_parse_error_raises():
    with pytest.raises(ValueError, match="4:"):
        doctheory.Theory.parse(read("invalid/broken_syntax.dth"))


def test_run_order_fulfillment():
    th = doctheory.Theory.parse(read("theories/order_fulfillment.dth"))
    r = doctheory.run(th, read("theories/order_fulfillment.queue"))
    assert r["status"] == "terminated"
    assert r["steps"] == 11
    assert r["model_size"] == 7
    assert r["queue"] == ""


def test_fuel():
    th, queue = doctheory.encode_tm(read("tm/ping_pong.tm"))
    r = doctheory.run(th, queue, fuel=25)
    assert r["status"] == "fuel-exhausted"
    assert r["steps"] == 25


def test_analyze():
    loop = doctheory.Theory.parse(read("theories/reminder_loop.dth"))
    assert doctheory.analyze(loop)["verdict"] == "possibly-non-terminating"
    ticket = doctheory.Theory.parse(read("theories/ticket_escalation.dth"))
    v = doctheory.analyze(ticket, read("theories/ticket_escalation.queue"))
    assert v["verdict"] == "poly-bounded"
    assert v["bounds"]["applicable"]


@pytest.mark.parametrize("k,n", [(1, 2), (2, 1)])
def test_exp_counts(k, n):
    th, queue = doctheory.exp_theory(k, n)
    model_size, steps = doctheory.expected_counts(k, n)
    r = doctheory.run(th, queue, elide_situations=True)
    assert (r["model_size"], r["steps"]) == (model_size, steps)


def test_normalize_value():
    assert doctheory.normalize_value("< a ,<>>") == "<a, <>>"
    with pytest.raises(ValueError):
        doctheory.normalize_value("<a")
