"""Reading and writing period files, lattice fixtures and result files.

Period file (text, version 1).  Blank lines and lines starting with ``#``
are ignored::

    format_version 1
    m 6
    r 1
    decimal_digits 40
    degree 1
    dimension 2
    intersection
    <m lines of m integers>
    polarization
    <one line of m integers>
    periods
    <r blocks of m lines: real imaginary radius>

Block k holds column k of the m x r period matrix: line i is the integral of
the k-th form over the i-th homology basis vector.

Lattice fixture (JSON): ``{"gram": [[...]], "h": [...], "degree": 4}``.
Pham basis file: JSON ``{"d": 4, "n": 2, "basis": [[0, 0, 0, 0], ...]}`` or
plain text with one translation index per line (integers separated by
spaces or commas).
"""

import hashlib
import json
import math
import os
import re
from fractions import Fraction
from importlib import resources

import mpmath

from .errors import FormatError, InputError
from .hodge import PeriodData, PolarizedLattice
from .interval import exact_fraction

FORMAT_VERSION = 1
HEADER_KEYS = ("format_version", "m", "r", "decimal_digits", "degree", "dimension")
FIXTURE_ENV = "HODGESCAN_FIXTURES"


# ---------------------------------------------------------------------------
# period files


def _content_lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield no, raw


def _ints(raw, no, expected):
    out = []
    col = 1
    for tok in raw.split():
        col = raw.index(tok, col - 1) + 1
        try:
            out.append(int(tok))
        except ValueError:
            raise FormatError(f"expected an integer, got {tok!r}", no, col) from None
    if len(out) != expected:
        raise FormatError(f"expected {expected} integers, got {len(out)}", no, 1)
    return out


def _decimal(tok, no, col):
    try:
        Fraction(tok)
        if "/" in tok:
            raise ValueError
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"expected a decimal number, got {tok!r}", no, col) from None
    return tok


def parse_period_file(text):
    """Parse period-file text into :class:`PeriodData`."""
    lines = list(_content_lines(text))
    pos = 0

    def next_line(what):
        nonlocal pos
        if pos >= len(lines):
            last = lines[-1][0] if lines else 0
            raise FormatError(f"unexpected end of file, expected {what}", last + 1, 1)
        item = lines[pos]
        pos += 1
        return item

    header = {}
    for key in HEADER_KEYS:
        no, raw = next_line(f"header field {key!r}")
        parts = raw.split()
        if len(parts) != 2 or parts[0] != key:
            raise FormatError(f"expected '{key} <integer>'", no, 1)
        try:
            header[key] = int(parts[1])
        except ValueError:
            raise FormatError(f"header field {key!r} is not an integer", no, raw.index(parts[1]) + 1) from None
        if key == "format_version" and header[key] != FORMAT_VERSION:
            raise FormatError(f"unsupported format_version {header[key]}", no, 1)
    m, r = header["m"], header["r"]
    if m < 1 or r < 0:
        raise FormatError("m must be positive and r non-negative", lines[1][0], 1)

    def keyword(word):
        no, raw = next_line(f"section {word!r}")
        if raw.strip() != word:
            raise FormatError(f"expected section keyword {word!r}", no, 1)

    keyword("intersection")
    intersection = []
    for _ in range(m):
        no, raw = next_line("an intersection matrix row")
        intersection.append(_ints(raw, no, m))
    keyword("polarization")
    no, raw = next_line("the polarization vector")
    polarization = _ints(raw, no, m)
    keyword("periods")
    periods = [[None] * r for _ in range(m)]
    radii = [[None] * r for _ in range(m)]
    for k in range(r):
        for i in range(m):
            no, raw = next_line(f"period entry ({i + 1}, {k + 1})")
            toks = raw.split()
            if len(toks) != 3:
                raise FormatError("expected 'real imaginary radius'", no, 1)
            cols = []
            start = 0
            for t in toks:
                c = raw.index(t, start)
                cols.append(c + 1)
                start = c + len(t)
            re_, im_, rad = (_decimal(t, no, c) for t, c in zip(toks, cols))
            if Fraction(rad) < 0:
                raise FormatError("negative radius", no, cols[2])
            periods[i][k] = (re_, im_)
            radii[i][k] = rad
    if pos != len(lines):
        raise FormatError("trailing content after the period block", lines[pos][0], 1)
    try:
        return PeriodData(intersection, polarization, periods, radii, header["degree"],
                          header["dimension"], header["decimal_digits"])
    except InputError as exc:
        raise FormatError(str(exc)) from None


def read_period_file(path):
    with open(path, encoding="utf-8") as fh:
        return parse_period_file(fh.read())


def format_period_file(pd):
    m, r = pd.m, pd.r
    out = [f"format_version {FORMAT_VERSION}", f"m {m}", f"r {r}",
           f"decimal_digits {pd.decimal_digits or 0}", f"degree {pd.degree_d}",
           f"dimension {pd.dim_n}", "intersection"]
    out += [" ".join(str(x) for x in row) for row in pd.intersection]
    out.append("polarization")
    out.append(" ".join(str(x) for x in pd.polarization_h))
    out.append("periods")
    for k in range(r):
        for i in range(m):
            re_, im_ = pd.periods[i][k]
            rad = pd.radii[i][k] if isinstance(pd.radii, (list, tuple)) else pd.radii
            out.append(f"{re_} {im_} {rad}")
    return "\n".join(out) + "\n"


def write_period_file(pd, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_period_file(pd))


def digest_bytes(data):
    return "sha256:" + hashlib.sha256(data).hexdigest()


def file_digest(path):
    with open(path, "rb") as fh:
        return digest_bytes(fh.read())


# ---------------------------------------------------------------------------
# fixtures


def fixture_dir():
    env = os.environ.get(FIXTURE_ENV)
    if env:
        return env
    return str(resources.files("hodgescan") / "fixtures")


def fixture_path(name):
    """Resolve a bundled fixture by name (with or without extension)."""
    base = fixture_dir()
    for cand in (name, name + ".json", name + ".periods"):
        p = os.path.join(base, cand)
        if os.path.isfile(p):
            return p
    raise InputError(f"unknown fixture {name!r} in {base}")


def list_fixtures():
    base = fixture_dir()
    return sorted(os.path.splitext(f)[0] for f in os.listdir(base) if f.endswith((".json", ".periods")))


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None


def load_lattice(path):
    """Read a lattice fixture into a :class:`PolarizedLattice`."""
    data = load_json(path)
    for key in ("gram", "h"):
        if key not in data:
            raise FormatError(f"lattice file lacks the {key!r} field")
    return PolarizedLattice([list(map(int, r)) for r in data["gram"]], [int(x) for x in data["h"]],
                            int(data.get("degree", 4)))


def load_pham_basis(path):
    """Return ``(B, d, n)``; d and n are ``None`` when the file is plain text."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        data = load_json(path)
        return [list(map(int, b)) for b in data["basis"]], data.get("d"), data.get("n")
    B = []
    for no, raw in _content_lines(text):
        toks = raw.replace(",", " ").replace("(", " ").replace(")", " ").split()
        try:
            B.append([int(t) for t in toks])
        except ValueError:
            raise FormatError("expected integers", no, 1) from None
    return B, None, None


_FLAT_ARRAY = re.compile(r"\[([^\[\]{}\"]*)\]")


def dump_json(obj):
    """Deterministic JSON: sorted keys, arrays of numbers kept on one line."""
    text = json.dumps(obj, indent=1, sort_keys=True)
    text = _FLAT_ARRAY.sub(lambda mo: "[" + ", ".join(t.strip() for t in mo.group(1).split(",") if t.strip()) + "]", text)
    return text + "\n"


# ---------------------------------------------------------------------------
# provenance-tagged numbers for result files

DIGITS = 30


def _decimal_round(q, digits, up):
    """Decimal string with ``digits`` significant digits, rounded up or down."""
    q = Fraction(q)
    if q == 0:
        return "0"
    e = math.floor(math.log10(abs(q.numerator)) - math.log10(q.denominator))
    # fix the exponent exactly
    while abs(q) >= Fraction(10) ** (e + 1):
        e += 1
    while abs(q) < Fraction(10) ** e:
        e -= 1
    scale = Fraction(10) ** (digits - 1 - e)
    x = q * scale
    n = math.ceil(x) if up else math.floor(x)
    if abs(n) >= 10 ** digits:
        n = n // 10 if n > 0 else -((-n) // 10)
        e += 1
        n = n + 1 if up and n > 0 else n
    s = str(abs(n))
    sign = "-" if n < 0 else ""
    mant = s[0] + ("." + s[1:].rstrip("0") if s[1:].rstrip("0") else "")
    return f"{sign}{mant}e{e:+d}"


def tag_upper(x, digits=DIGITS):
    """An upper bound of a binary float, printed so it stays an upper bound."""
    if x is None or mpmath.isinf(x):
        return {"kind": "upper_bound", "value": "inf"}
    return {"kind": "upper_bound", "value": _decimal_round(exact_fraction(x), digits, True)}


def tag_lower(x, digits=DIGITS):
    return {"kind": "lower_bound", "value": _decimal_round(exact_fraction(x), digits, False)}


def tag_approx(x, digits=DIGITS):
    if mpmath.isinf(x):
        return {"kind": "approximate", "value": "inf"}
    return {"kind": "approximate", "value": mpmath.nstr(x, digits, min_fixed=1, max_fixed=0)}


def tag_interval(iv, digits=DIGITS):
    return {"kind": "interval", "lo": _decimal_round(exact_fraction(iv.lo), digits, False),
            "hi": _decimal_round(exact_fraction(iv.hi), digits, True)}


def tag_int(x):
    return {"kind": "exact_integer", "value": x}


def tag_ints(v):
    return {"kind": "exact_integer", "value": v}


def tag_rationals(v):
    return {"kind": "exact_rational", "value": [str(Fraction(x)) for x in v]}


def tag_rational(x):
    return {"kind": "exact_rational", "value": str(Fraction(x))}
