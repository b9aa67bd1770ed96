"""Collection of regular expressions used to read session files and CLI arguments."""
import regex

TOKEN_PATTERN = regex.compile(
    r"""
    (?P<COMMENT>\#[^\n]*)
    |(?P<NEWLINE>\n)
    |(?P<WS>[ \t\r\f]+)
    |(?P<NUMBER>[0-9]+)
    |(?P<NAME>[A-Za-z_][A-Za-z_0-9]*)
    |(?P<STRING>"[^"\n]*")
    |(?P<OP>[-+*/^()\[\],;=:|])
    |(?P<MISMATCH>.)
    """,
    regex.VERBOSE,
)
"""
Regex to split session text into tokens

Catches:
    #. ``# comments`` up to the end of the line
    #. integer literals, identifiers and double-quoted strings
    #. the operator and punctuation characters of the session language

Anything else ends up in the ``MISMATCH`` group and is reported as a
lexical error.
"""

SESSION_NAME_PATTERN = regex.compile(r"^(?P<name>[A-Za-z0-9_]+)$")
"""
Regex to tell a shipped session name (``wave``) from a path (``./my.jet``)
"""

INSTANTIATE_BLOCK_PATTERN = regex.compile(r"^(?P<block>[A-Za-z_][A-Za-z_0-9]*)$")
"""
Regex to tell ``--instantiate BLOCK`` from ``--instantiate h=u[x]``
"""
