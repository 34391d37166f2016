import json
import pathlib

import pytest

import rrsp

jsonschema = pytest.importorskip("jsonschema")

SCHEMA = json.loads(
    (pathlib.Path(__file__).resolve().parents[2] / "schema" / "instance.schema.json").read_text()
)


@pytest.mark.parametrize(
    "family,uncertainty,budget",
    [
        ("layered", "interval", 0),
        ("asp", "discrete", 2),
        ("random-dag", "continuous", 1.5),
    ],
)
def test_generated_documents_match_schema(family, uncertainty, budget):
    inst = rrsp.generate(family, size=6, seed=3, uncertainty=uncertainty, budget=budget)
    jsonschema.validate(json.loads(inst.to_json()), SCHEMA)


def test_schema_rejects_unknown_fields():
    doc = json.loads(rrsp.generate("layered").to_json())
    doc["colour"] = "red"
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate(doc, SCHEMA)
