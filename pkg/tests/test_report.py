from __future__ import annotations

import csv
import io
import json

from latinquot.classify import complete_quotients, scan
from latinquot.report import CSV_FIELDS, failed_checks, to_csv, to_json, to_text


def test_json_fields():
    r = complete_quotients(7, 1, 1)
    doc = json.loads(to_json(r))
    for key in ("p", "d", "n", "line", "i", "j", "l", "m", "outcome", "k", "witnesses",
                "quotient_orders", "conditions", "runtime_ms"):
        assert key in doc
    assert doc["k"] == 2 and doc["runtime_ms"] is None
    assert [w["label"] for w in doc["witnesses"]] == ["V_2", "V_4"]
    assert json.loads(to_json(r, timing=True))["runtime_ms"] is not None


def test_json_is_byte_identical():
    a = to_json(complete_quotients(2, 3, 1))
    b = to_json(complete_quotients(2, 3, 1))
    assert a == b


def test_csv():
    reps = scan(3, 1)
    text = to_csv(reps, verdict="PASS")
    body = [line for line in text.splitlines() if not line.startswith("#")]
    rows = list(csv.DictReader(io.StringIO("\n".join(body))))
    assert list(rows[0]) == CSV_FIELDS
    assert len(rows) == len(reps)
    assert text.rstrip().endswith("PASS")


def test_text_and_checks():
    r = complete_quotients(3, 1, 1)
    assert failed_checks(r) == []
    t = to_text(r)
    assert "k = 1" in t and "quotient K_3" in t and "all passed" in t
