"""Default function-word stoplist (English closed-class words).

Only content words (nouns, verbs, adjectives, adverbs) carry category
meaning; everything here is grammatical machinery and is stripped from
definitions before graph construction. Override with a one-token-per-line
file via :func:`load_stoplist`.
"""

from __future__ import annotations

from pathlib import Path

DEFAULT_STOPLIST_ID = "en-closed-class-v1"

_WORDS = """
a an the
this that these those
each every either neither
some any no none all both few several many much more most
other another such own same
what which who whom whose when where why how whatever whichever whoever whomever whenever wherever however
i me my mine myself
we us our ours ourselves
you your yours yourself yourselves
he him his himself
she her hers herself
it its itself
they them their theirs themselves
one ones oneself
somebody someone something anybody anyone anything everybody everyone everything nobody nothing
be am is are was were been being
do does did doing done
have has had having
will would shall should can could may might must ought
and or nor but yet so for
if because although though while whereas unless until since as than whether once lest
of in on at by with about against between among into through throughout during
before after above below to from up down out off over under upon within without
across along around behind beneath beside besides beyond despite except inside
near onto outside past per toward towards underneath unto via amid amidst atop
not nor never neither
there here then thus hence thereby wherein whereby
too also only even just quite rather somewhat
yes no
et etc
""".split()

DEFAULT_STOPLIST = frozenset(_WORDS)


def load_stoplist(path: str | Path) -> frozenset[str]:
    """Read a stoplist file: one token per line, ``#`` starts a comment."""
    tokens = set()
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            tokens.add(line)
    return frozenset(tokens)
