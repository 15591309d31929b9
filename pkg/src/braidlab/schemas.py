"""JSON Schemas (draft 2020-12) for the command-line payloads.

They are plain dictionaries so the library does not need a validator at
runtime; the test-suite validates every payload with ``jsonschema``.
"""

COMPLEX = {
    "type": "object",
    "properties": {"re": {"type": "number"}, "im": {"type": "number"}},
    "required": ["re", "im"],
    "additionalProperties": False,
}

_INDEX = {"type": "integer", "minimum": 1}

PARAMS = {
    "type": "object",
    "properties": {
        "N": {"type": "integer", "minimum": 2},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "i": _INDEX,
                    "j": _INDEX,
                    "eps": {"enum": ["+", "-"]},
                    "re": {"type": "number"},
                    "im": {"type": "number"},
                },
                "required": ["i", "j", "eps", "re", "im"],
                "additionalProperties": False,
            },
        },
        "center_shift": COMPLEX,
    },
    "required": ["N", "entries"],
    "additionalProperties": False,
}

SPARSE_OPERATOR = {
    "type": "object",
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "triplets": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [_INDEX, _INDEX, {"type": "number"}, {"type": "number"}],
                "minItems": 4,
                "maxItems": 4,
            },
        },
    },
    "required": ["dim", "triplets"],
}

TRANSFER = {
    **SPARSE_OPERATOR,
    "properties": {
        **SPARSE_OPERATOR["properties"],
        "N": {"type": "integer"},
        "r": {"type": "integer"},
        "theta": COMPLEX,
        "derivative_order": {"type": "integer", "minimum": 0},
    },
    "required": ["N", "r", "theta", "dim", "triplets"],
}

CHAIN_OPERATOR = {
    **SPARSE_OPERATOR,
    "properties": {
        **SPARSE_OPERATOR["properties"],
        "N": {"type": "integer"},
        "sites": {"type": "integer", "minimum": 2},
        "boundary": {"enum": ["closed", "open"]},
        "kind": {"enum": ["hamiltonian", "conserved"]},
        "l": {"type": "integer"},
    },
    "required": ["N", "sites", "boundary", "kind", "dim", "triplets"],
}

CHECK = {
    "type": "object",
    "properties": {
        "check": {"enum": ["braid", "ybe", "unitarity", "commute", "projectors"]},
        "N": {"type": "integer"},
        "tol": {"type": "number"},
        "residuals": {"type": "object", "additionalProperties": {"type": "number"}},
        "passed": {"type": "boolean"},
    },
    "required": ["check", "N", "tol", "residuals", "passed"],
}

_RECORD = {
    "type": "object",
    "properties": {
        "seed_state": {"type": "array", "items": _INDEX},
        "parity": {"enum": ["even", "odd", "mixed"]},
        "period": {"type": "integer", "minimum": 1},
        "root_index": {"type": "integer", "minimum": 0},
        "exponent": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "i": _INDEX,
                    "j": _INDEX,
                    "eps": {"enum": ["+", "-"]},
                    "coeff": {"type": "integer"},
                },
                "required": ["i", "j", "eps", "coeff"],
            },
        },
        "multiplicity": {"type": "integer", "minimum": 1},
        "value": COMPLEX,
    },
    "required": ["seed_state", "parity", "period", "root_index", "exponent", "multiplicity", "value"],
}

SPECTRUM = {
    "type": "object",
    "properties": {
        "N": {"type": "integer"},
        "r": {"type": "integer"},
        "theta": COMPLEX,
        "records": {"type": "array", "items": _RECORD},
        "values": {"type": "array", "items": COMPLEX},
        "oracle": {"type": "array", "items": COMPLEX},
        "matched": {"type": "boolean"},
        "max_deviation": {"type": ["number", "null"]},
        "tolerance": {"type": "number"},
    },
    "required": ["N", "r", "theta", "records", "values"],
}

CENSUS = {
    "type": "object",
    "properties": {
        "N": {"type": "integer"},
        "r": {"type": "integer"},
        "index": _INDEX,
        "trace_doublet": {"type": "integer"},
        "multiplets": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "minus_count": {"type": "integer"},
                    "plus_count": {"type": "integer"},
                    "multiplicity": {"type": "integer"},
                    "root_set_sizes": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "properties": {"size": {"type": "integer"}, "count": {"type": "integer"}},
                            "required": ["size", "count"],
                        },
                    },
                },
                "required": ["minus_count", "plus_count", "multiplicity", "root_set_sizes"],
            },
        },
        "fermat_total": {"type": "integer"},
        "max_root_sum": {"type": "number"},
        "oracle_deviation": {"type": "number"},
    },
    "required": ["r", "index", "trace_doublet", "multiplets", "fermat_total", "max_root_sum"],
}

POTENTIAL = {
    "type": "object",
    "properties": {
        "N": {"type": "integer"},
        "theta": COMPLEX,
        "lambda": COMPLEX,
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "a": _INDEX,
                    "b": _INDEX,
                    "c": _INDEX,
                    "d": _INDEX,
                    "re": {"type": "number"},
                    "im": {"type": "number"},
                },
                "required": ["a", "b", "c", "d", "re", "im"],
                "additionalProperties": False,
            },
        },
        "excluded": {"type": "array", "items": COMPLEX},
        "checks": {"type": "object", "additionalProperties": {"type": "number"}},
    },
    "required": ["N", "theta", "lambda", "entries", "excluded"],
}

BY_COMMAND = {
    "gen-params": PARAMS,
    "check": CHECK,
    "transfer": TRANSFER,
    "spectrum": SPECTRUM,
    "census": CENSUS,
    "spin-chain": CHAIN_OPERATOR,
    "potential": POTENTIAL,
}
