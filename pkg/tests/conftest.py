"""Shared fixtures: JSON-schema validation for the CLI report formats."""

import json
from importlib import resources

import pytest

_SCHEMA_SUFFIX = ".schema.json"


@pytest.fixture(scope="session")
def schema_registry():
    pytest.importorskip("jsonschema")
    from referencing import Registry, Resource

    entries = []
    for item in (resources.files("semicircle_lab") / "schemas").iterdir():
        if item.name.endswith(_SCHEMA_SUFFIX):
            doc = json.loads(item.read_text(encoding="utf-8"))
            entries.append((doc["$id"], Resource.from_contents(doc)))
    assert entries, "no schemas shipped with the package"
    return Registry().with_resources(entries)


@pytest.fixture
def validate_report(schema_registry):
    """Validate a report dict against a named schema, cross-refs included."""
    import jsonschema

    def check(schema_id, instance):
        schema = schema_registry.contents(schema_id)
        jsonschema.Draft202012Validator(schema, registry=schema_registry).validate(instance)

    return check
