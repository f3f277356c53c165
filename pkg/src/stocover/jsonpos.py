"""JSON parsing that records the source line of every value.

``json.loads`` reports positions only for syntax errors; schema validation
needs them for semantic errors too ("line 7: probabilities sum to 5/6, not
1").  This module parses the full JSON grammar itself and wraps every value
in a :class:`Located` node carrying its 1-based start line.  Ints and floats
stay distinct (the instance schema rejects floats), and duplicate object keys
are rejected outright.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .errors import FormatError

_STRING = re.compile(r'"(?:[^"\\\x00-\x1f]|\\.)*"')
_NUMBER = re.compile(r"-?(?:0|[1-9]\d*)(\.\d+)?([eE][+-]?\d+)?")
_WS = " \t\n\r"


@dataclass(frozen=True)
class Located:
    """A parsed JSON value plus the line it starts on.

    Objects parse to ``dict[str, Located]`` and arrays to ``list[Located]``;
    scalars are plain Python values.
    """

    value: object
    line: int


def parse_located(text: str) -> Located:
    reader = _Reader(text)
    value = reader.parse_value()
    reader.skip_ws()
    if reader.pos != len(text):
        reader.fail("trailing data after the JSON document")
    return value


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1

    def fail(self, message: str):
        raise FormatError(self.line, message)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in _WS:
            if self.text[self.pos] == "\n":
                self.line += 1
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            self.fail(f"expected {ch!r}")
        self.pos += 1

    def parse_value(self) -> Located:
        self.skip_ws()
        line = self.line
        ch = self.peek()
        if ch == "{":
            return Located(self.parse_object(), line)
        if ch == "[":
            return Located(self.parse_array(), line)
        if ch == '"':
            return Located(self.parse_string(), line)
        if ch == "-" or ch.isdigit():
            return Located(self.parse_number(), line)
        for word, value in (("true", True), ("false", False), ("null", None)):
            if self.text.startswith(word, self.pos):
                self.pos += len(word)
                return Located(value, line)
        self.fail("expected a JSON value")

    def parse_string(self) -> str:
        match = _STRING.match(self.text, self.pos)
        if not match:
            self.fail("malformed string")
        self.pos = match.end()
        return json.loads(match.group(0))

    def parse_number(self) -> int | float:
        match = _NUMBER.match(self.text, self.pos)
        if not match:
            self.fail("malformed number")
        self.pos = match.end()
        if match.group(1) or match.group(2):
            return float(match.group(0))
        return int(match.group(0))

    def parse_object(self) -> dict[str, Located]:
        self.expect("{")
        out: dict[str, Located] = {}
        self.skip_ws()
        if self.peek() == "}":
            self.pos += 1
            return out
        while True:
            self.skip_ws()
            key_line = self.line
            if self.peek() != '"':
                self.fail("expected an object key")
            key = self.parse_string()
            if key in out:
                raise FormatError(key_line, f"duplicate key {key!r}")
            self.skip_ws()
            self.expect(":")
            out[key] = self.parse_value()
            self.skip_ws()
            if self.peek() == ",":
                self.pos += 1
                continue
            self.expect("}")
            return out

    def parse_array(self) -> list[Located]:
        self.expect("[")
        out: list[Located] = []
        self.skip_ws()
        if self.peek() == "]":
            self.pos += 1
            return out
        while True:
            out.append(self.parse_value())
            self.skip_ws()
            if self.peek() == ",":
                self.pos += 1
                continue
            self.expect("]")
            return out
