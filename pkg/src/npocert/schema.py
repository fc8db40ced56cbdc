"""JSON schema for everything the command line prints in JSON mode."""

SCHEMA_VERSION = 1

_inertia_item = {
    "type": "object",
    "required": ["graph6", "n", "inertia", "nonpositive", "spectrum"],
    "properties": {
        "graph6": {"type": "string"},
        "n": {"type": "integer", "minimum": 1, "maximum": 64},
        "inertia": {
            "type": "array",
            "items": {"type": "integer", "minimum": 0},
            "minItems": 3,
            "maxItems": 3,
        },
        "nonpositive": {"type": "integer", "minimum": 0},
        "spectrum": {"type": "array", "items": {"type": "number"}},
    },
}

_verdict = {
    "type": "object",
    "required": ["k", "lambda_k", "degree_index", "degree", "holds", "slack"],
    "properties": {
        "k": {"type": "integer", "minimum": 1, "maximum": 5},
        "lambda_k": {"type": "number"},
        "degree_index": {"type": "integer", "minimum": 1},
        "degree": {"type": "integer", "minimum": 0},
        "holds": {"type": "boolean"},
        "slack": {"type": "number"},
    },
}

_laplacian_item = {
    "type": "object",
    "required": ["graph6", "n", "spectrum", "degrees", "verdicts"],
    "properties": {
        "graph6": {"type": "string"},
        "n": {"type": "integer", "minimum": 1, "maximum": 64},
        "spectrum": {"type": "array", "items": {"type": "number"}},
        "degrees": {"type": "array", "items": {"type": "integer"}},
        "verdicts": {"type": "array", "items": _verdict},
    },
}

_certificate = {
    "type": "object",
    "required": [
        "version", "k", "value", "complete", "witness_graph6",
        "level_counts", "restricted", "pattern_graph6",
    ],
    "properties": {
        "version": {"const": SCHEMA_VERSION},
        "k": {"type": "integer", "minimum": 1},
        "value": {"type": ["integer", "null"]},
        "complete": {"type": "boolean"},
        "witness_graph6": {"type": ["string", "null"]},
        "level_counts": {"type": "array", "items": {"type": ["integer", "null"], "minimum": 0}},
        "restricted": {"type": "boolean"},
        "pattern_graph6": {"type": ["string", "null"]},
        "cache_dir": {"type": ["string", "null"]},
    },
}

_bound_row = {
    "type": "object",
    "required": ["k", "lower", "upper", "exact", "provenance"],
    "properties": {
        "k": {"type": "integer", "minimum": 1},
        "lower": {"type": "integer"},
        "upper": {"type": ["integer", "null"]},
        "exact": {"type": "boolean"},
        "provenance": {"type": "string"},
    },
}


def _envelope(kind: str, result: dict) -> dict:
    return {
        "type": "object",
        "required": ["version", "kind", "results"],
        "properties": {
            "version": {"const": SCHEMA_VERSION},
            "kind": {"const": kind},
            "results": {"type": "array", "items": result},
        },
    }


_construct = {
    "type": "object",
    "required": ["version", "kind", "name", "graph6", "n"],
    "properties": {
        "version": {"const": SCHEMA_VERSION},
        "kind": {"const": "construct"},
        "name": {"type": "string"},
        "graph6": {"type": "string"},
        "n": {"type": "integer", "minimum": 1, "maximum": 64},
    },
}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "$id": f"npocert/output/v{SCHEMA_VERSION}",
    "title": "npocert command output",
    "oneOf": [
        _envelope("inertia", _inertia_item),
        _envelope("spectrum", _inertia_item),
        _envelope("laplacian", _laplacian_item),
        _envelope("bounds", _bound_row),
        _certificate,
        _construct,
    ],
    "$defs": {
        "certificate": _certificate,
        "inertia_item": _inertia_item,
        "laplacian_item": _laplacian_item,
        "bound_row": _bound_row,
    },
}
