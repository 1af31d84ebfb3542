"""JSON schemas for the machine-readable CLI outputs (draft 2020-12)."""

_num_or_rational = {"oneOf": [{"type": "number"}, {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}]}
_rational = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
_decimal = {"type": "string", "pattern": r"^-?(\d+(\.\d*)?|\.\d+)([eE][-+]?\d+)?$"}

ENVELOPE = {
    "type": "object",
    "required": ["t", "resolution", "catalog", "points", "extreme"],
    "properties": {
        "t": {"type": "integer", "minimum": 2},
        "resolution": {"type": "integer", "minimum": 2},
        "catalog": {"type": "boolean"},
        "points": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["p", "upper", "lower", "exact", "active_upper"],
                "properties": {
                    "p": _decimal, "upper": _decimal, "lower": _decimal,
                    "exact": {"enum": [0, 1]},
                    "active_upper": {"type": "string"},
                    "p_rational": _rational, "upper_rational": _rational, "lower_rational": _rational,
                },
                "additionalProperties": False,
            },
        },
        "extreme": {
            "type": "object",
            "required": ["p_star", "d_star", "exact"],
            "properties": {
                "p_star": {"type": "array", "items": _num_or_rational, "minItems": 2, "maxItems": 2},
                "d_star": _num_or_rational,
                "exact": {"type": "boolean"},
                "d_lower": _num_or_rational,
            },
        },
    },
}

POINT_BOUND = {
    "type": "object",
    "required": ["t", "p", "upper", "lower", "exact", "active_upper", "lower_source"],
    "properties": {
        "t": {"type": "integer"}, "p": _num_or_rational, "upper": _num_or_rational,
        "lower": _num_or_rational, "exact": {"type": "boolean"},
        "active_upper": {"type": "string"}, "lower_source": {"type": "string"},
    },
    "additionalProperties": False,
}

VERIFY = {
    "type": "object",
    "required": ["suite", "passed", "checks"],
    "properties": {
        "suite": {"type": "string"},
        "passed": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["key", "about", "passed", "detail", "seconds"],
                "properties": {"key": {"type": "string"}, "about": {"type": "string"},
                               "passed": {"type": "boolean"}, "detail": {"type": "string"},
                               "seconds": {"type": "number"}},
            },
        },
    },
}

# generic key/value outputs of the other subcommands
RECORD = {"type": "object", "minProperties": 1}
