"""JSON schemas for the machine-readable CLI outputs."""

_side = {
    "oneOf": [
        {"type": "array", "items": {"type": "string"}},
        {"type": "string"},
    ]
}

PRESENTATION_SCHEMA = {
    "type": "object",
    "required": ["kind", "flavor", "alphabet", "relations"],
    "properties": {
        "kind": {"type": "string"},
        "flavor": {"enum": ["monoid", "semigroup", "category", "tensor"]},
        "n": {"type": ["integer", "null"]},
        "cap": {"type": ["integer", "null"]},
        "monoid": {"type": "string"},
        "alphabet": {"type": "array", "items": {"type": "string"}},
        "relations": {
            "type": "array",
            "items": {"type": "array", "items": _side, "minItems": 2, "maxItems": 2},
        },
    },
}

ELEMENT_SCHEMA = {
    "type": "object",
    "required": ["tuple", "map"],
    "properties": {
        "tuple": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "map": {
            "type": "object",
            "required": ["m", "n", "images"],
            "properties": {
                "m": {"type": "integer", "minimum": 0},
                "n": {"type": "integer", "minimum": 0},
                "images": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            },
        },
    },
}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["kind", "monoid", "verdict"],
    "properties": {
        "kind": {"type": "string"},
        "monoid": {"type": "string"},
        "n": {"type": ["integer", "null"]},
        "soundness": {"type": ["string", "null"]},
        "generation": {
            "type": "object",
            "required": ["covered", "target"],
            "properties": {
                "covered": {"type": "integer"},
                "target": {"type": "integer"},
            },
        },
        "enumerated_size": {"type": ["integer", "object", "null"]},
        "target_size": {"type": ["integer", "object", "null"]},
        "verdict": {"enum": ["pass", "fail", "inconclusive"]},
        "notes": {"type": "object"},
    },
}

MATRIX_SCHEMA = {
    "type": "object",
    "required": ["cells"],
    "properties": {
        "cells": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["cell", "verdict"],
                "properties": {
                    "cell": {"type": "integer"},
                    "verdict": {"type": "string"},
                },
            },
        },
    },
}
