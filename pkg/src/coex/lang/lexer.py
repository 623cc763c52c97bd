"""Hand-written lexer. Statements are newline- or semicolon-terminated;
newlines inside parentheses or brackets are insignificant."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import LexError

KEYWORDS = {
    "var", "let", "print", "if", "elif", "else", "while", "for", "in",
    "range", "steps", "input", "native", "item", "true", "false",
    "and", "or", "not",
}

_TWO_CHAR = {"==", "!=", "<=", ">="}
_ONE_CHAR = set("(){}[],;=<>+-*/")


@dataclass(frozen=True)
class Token:
    kind: str  # keyword/symbol text, or IDENT, NUMBER, STRING, NEWLINE, EOF
    text: str
    line: int
    col: int
    value: object = None


def tokenize(source: str) -> list[Token]:
    toks: list[Token] = []
    line, col = 1, 1
    i, n = 0, len(source)
    depth = 0  # ( and [ nesting; newlines inside are skipped

    def push(kind, text, value=None):
        toks.append(Token(kind, text, line, col, value))

    while i < n:
        ch = source[i]
        if ch == "#":
            while i < n and source[i] != "\n":
                i += 1
            continue
        if ch == "\n":
            if depth == 0 and toks and toks[-1].kind not in ("NEWLINE", ";"):
                push("NEWLINE", "\n")
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == '"':
            j = i + 1
            buf = []
            while j < n and source[j] != '"':
                c = source[j]
                if c == "\\" and j + 1 < n:
                    esc = source[j + 1]
                    buf.append({"n": "\n", "t": "\t", '"': '"', "\\": "\\"}.get(esc, esc))
                    j += 2
                elif c == "\n":
                    raise LexError("unterminated string", line, col)
                else:
                    buf.append(c)
                    j += 1
            if j >= n:
                raise LexError("unterminated string", line, col)
            push("STRING", source[i : j + 1], "".join(buf))
            col += j + 1 - i
            i = j + 1
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            is_float = False
            if j < n and source[j] == "." and j + 1 < n and source[j + 1].isdigit():
                is_float = True
                j += 1
                while j < n and source[j].isdigit():
                    j += 1
            if j < n and source[j] in "eE":
                k = j + 1
                if k < n and source[k] in "+-":
                    k += 1
                if k < n and source[k].isdigit():
                    is_float = True
                    j = k
                    while j < n and source[j].isdigit():
                        j += 1
            text = source[i:j]
            push("NUMBER", text, float(text) if is_float else int(text))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            word = source[i:j]
            push(word if word in KEYWORDS else "IDENT", word)
            col += j - i
            i = j
            continue
        two = source[i : i + 2]
        if two in _TWO_CHAR:
            push(two, two)
            i += 2
            col += 2
            continue
        if ch in _ONE_CHAR:
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth = max(0, depth - 1)
            push(ch, ch)
            i += 1
            col += 1
            continue
        raise LexError(f"illegal character {ch!r}", line, col)

    # trailing NEWLINE is dropped; EOF terminates the final statement
    while toks and toks[-1].kind == "NEWLINE":
        toks.pop()
    toks.append(Token("EOF", "", line, col))
    return toks
