"""JSON Schemas for every ``--format json`` payload the CLI writes.

Non-finite floats (the +inf sentinel for unavailable bounds) are written
as the bare token ``Infinity``, which Python's :mod:`json` reads back.
"""

_num = {"type": "number"}
_num_or_null = {"type": ["number", "null"]}

SERIES = {
    "type": "object",
    "required": ["alpha", "center", "coeffs"],
    "properties": {
        "alpha": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
        "center": _num,
        "coeffs": {"type": "array", "items": _num, "minItems": 1},
    },
    "additionalProperties": False,
}

CONVERGENCE_REPORT = {
    "type": "object",
    "required": ["status", "root", "residual", "iterations", "L_hat", "a_posteriori", "trace"],
    "properties": {
        "status": {"enum": ["converged", "max_iter_exceeded", "diverged", "non_contractive"]},
        "root": _num,
        "residual": _num,
        "iterations": {"type": "integer", "minimum": 0},
        "L_hat": _num,
        "a_posteriori": _num,
        "trace": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["k", "x", "step"],
                "properties": {"k": {"type": "integer", "minimum": 0}, "x": _num, "step": _num_or_null},
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

DIFF = {
    "type": "object",
    "required": ["command", "method", "function", "x0", "alpha", "estimate", "converged"],
    "properties": {
        "command": {"const": "diff"},
        "method": {"enum": ["limit", "series", "holder"]},
        "function": {"type": "string"},
        "x0": _num,
        "alpha": _num,
        "estimate": _num,
        "converged": {"type": "boolean"},
        "trail": {
            "type": "array",
            "items": {"type": "object", "required": ["h", "quotient"],
                      "properties": {"h": _num, "quotient": _num}},
        },
        "exponent": _num,
        "log_coefficient": _num,
        "r_squared": _num,
        "samples": {"type": "integer"},
    },
}

INTEGRATE = {
    "type": "object",
    "required": ["command", "function", "a", "b", "alpha", "backend", "partitions", "value"],
    "properties": {
        "command": {"const": "integrate"},
        "function": {"type": "string"},
        "a": _num,
        "b": _num,
        "alpha": _num,
        "backend": {"enum": ["literal", "measure", "series"]},
        "partitions": {"type": "integer", "minimum": 1},
        "value": _num,
    },
    "additionalProperties": False,
}

TAYLOR = {
    "type": "object",
    "required": ["command", "function", "x", "alpha", "terms", "value", "remainder", "rows"],
    "properties": {
        "command": {"const": "taylor"},
        "function": {"type": "string"},
        "x": _num,
        "alpha": _num,
        "terms": {"type": "integer", "minimum": 0},
        "value": _num,
        "remainder": {"type": "number", "minimum": 0},
        "underflowed": {"type": "array", "items": {"type": "integer"}},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["k", "coeff", "term", "partial_sum", "remainder"],
                "properties": {"k": {"type": "integer"}, "coeff": _num, "term": _num,
                               "partial_sum": _num, "remainder": {"type": "number", "minimum": 0}},
            },
        },
    },
    "additionalProperties": False,
}

HOLDER = {
    "type": "object",
    "required": ["command", "function", "x0", "exponent", "log_coefficient", "r_squared", "samples"],
    "properties": {
        "command": {"const": "holder"},
        "function": {"type": "string"},
        "x0": _num,
        "exponent": _num,
        "log_coefficient": _num,
        "r_squared": {"type": "number", "minimum": 0, "maximum": 1},
        "samples": {"type": "integer", "minimum": 3},
    },
    "additionalProperties": False,
}

CHECK_METRIC = {
    "type": "object",
    "required": ["command", "alpha", "dim", "points", "triples_checked", "ok", "violations"],
    "properties": {
        "command": {"const": "check-metric"},
        "alpha": _num,
        "dim": {"type": "integer", "minimum": 1},
        "points": {"type": "integer", "minimum": 1},
        "triples_checked": {"type": "integer"},
        "ok": {"type": "boolean"},
        "violations": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["i", "j", "k", "axiom"],
                "properties": {"i": {"type": "integer"}, "j": {"type": "integer"},
                               "k": {"type": ["integer", "null"]},
                               "axiom": {"enum": ["non-negativity", "symmetry", "identity", "triangle"]}},
            },
        },
    },
    "additionalProperties": False,
}

CATALOG = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["name", "valid_alpha", "known_root", "known_fixed_point", "known_holder_exponent"],
        "properties": {
            "name": {"type": "string"},
            "valid_alpha": {"type": "array", "items": _num},
            "known_root": _num_or_null,
            "known_fixed_point": _num_or_null,
            "known_holder_exponent": _num_or_null,
            "holder_point": _num,
            "series": SERIES,
        },
        "additionalProperties": False,
    },
}

BY_COMMAND = {
    "diff": DIFF,
    "integrate": INTEGRATE,
    "solve": CONVERGENCE_REPORT,
    "taylor": TAYLOR,
    "holder": HOLDER,
    "check-metric": CHECK_METRIC,
    "catalog": CATALOG,
}
