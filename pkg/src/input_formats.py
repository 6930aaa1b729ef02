"""
Parsers for ring, ideal and module files.

A file is a header of directives followed by sections:

    # comment
    char 2
    vars x, y
    order grevlex
    ideal:
    x^2 + x*y
    generators:
    x
    module:
    twists 0, 0
    x, y
    0, x

`ring <path>` may replace the char/vars/order header and the ideal
section by those of another file. See FORMATS.md for the full grammar.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple

from .groebner import GroebnerIdeal, InhomogeneousIdealError, QuotientRing
from .koszul import ElementSequence
from .modules import PresentedModule
from .polynomial import FieldError, PolyRing, Polynomial, PolynomialSyntaxError

logger = logging.getLogger(__name__)

SECTIONS = ('ideal', 'generators', 'module')
DIRECTIVES = ('char', 'vars', 'order', 'ring')

# (line number, column of the first character, text)
Entry = Tuple[int, int, str]


class InputFormatError(ValueError):
    """Malformed input; line and column are 1-based."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        location = f"line {line}, column {column}: " if line else ''
        super().__init__(f"{location}{message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass
class Document:
    char: Optional[Entry] = None
    vars: Optional[Entry] = None
    order: Optional[Entry] = None
    ring: Optional[Entry] = None
    sections: dict = field(default_factory=lambda: {name: [] for name in SECTIONS})
    present: set = field(default_factory=set)


def _split_entries(line_no: int, column: int, text: str) -> List[Entry]:
    """Comma-separated pieces of a line with their starting columns."""
    entries = []
    offset = 0
    for piece in text.split(','):
        stripped = piece.strip()
        lead = len(piece) - len(piece.lstrip())
        entries.append((line_no, column + offset + lead, stripped))
        offset += len(piece) + 1
    return entries


def parse_document(text: str) -> Document:
    doc = Document()
    current: Optional[str] = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].rstrip()
        if not line.strip():
            continue
        column = len(line) - len(line.lstrip()) + 1
        body = line.strip()
        if body.endswith(':') and body[:-1].strip().lower() in SECTIONS:
            current = body[:-1].strip().lower()
            if current in doc.present:
                raise InputFormatError(f"Section '{current}:' appears twice", line_no, column)
            doc.present.add(current)
            continue
        if current is None:
            keyword, _, rest = body.partition(' ')
            keyword = keyword.lower()
            if keyword not in DIRECTIVES:
                raise InputFormatError(f"Unknown directive '{keyword}'", line_no, column)
            if getattr(doc, keyword) is not None:
                raise InputFormatError(f"Directive '{keyword}' given twice", line_no, column)
            value_column = column + len(body) - len(rest.lstrip()) if rest.strip() else column
            setattr(doc, keyword, (line_no, value_column, rest.strip()))
            continue
        doc.sections[current].append((line_no, column, body))
    return doc


def _to_polynomial(entry: Entry, ring: PolyRing) -> Polynomial:
    line_no, column, text = entry
    try:
        return ring.parse(text)
    except PolynomialSyntaxError as e:
        raise InputFormatError(str(e), line_no, column + max(e.column, 1) - 1)


def _polynomials(entries: List[Entry], ring: PolyRing, homogeneous: bool = True) -> List[Polynomial]:
    out = []
    for line_no, column, text in entries:
        for entry in _split_entries(line_no, column, text):
            f = _to_polynomial(entry, ring)
            if homogeneous and not f.is_homogeneous():
                raise InputFormatError(f"Generator {f} is not homogeneous", entry[0], entry[1])
            out.append(f)
    return out


def _ambient(doc: Document) -> PolyRing:
    for name in ('char', 'vars'):
        if getattr(doc, name) is None:
            raise InputFormatError(f"Missing '{name}' directive", 1, 1)
    line_no, column, value = doc.char
    try:
        p = int(value)
    except ValueError:
        raise InputFormatError(f"Characteristic must be an integer, got '{value}'", line_no, column)
    names = [v.strip() for v in doc.vars[2].split(',') if v.strip()]
    kind, priority = 'grevlex', None
    if doc.order is not None:
        parts = doc.order[2].split(None, 1)
        kind = parts[0] if parts else kind
        if len(parts) > 1:
            priority = [v.strip() for v in parts[1].split(',') if v.strip()]
    try:
        return PolyRing.create(p, names, kind, priority)
    except FieldError as e:
        raise InputFormatError(str(e), line_no, column)
    except ValueError as e:
        where = doc.order or doc.vars
        raise InputFormatError(str(e), where[0], where[1])


def _ring_of(doc: Document, base_dir: Optional[Path]) -> QuotientRing:
    if doc.ring is not None:
        line_no, column, value = doc.ring
        if any(getattr(doc, d) is not None for d in ('char', 'vars', 'order')) or 'ideal' in doc.present:
            raise InputFormatError("'ring' cannot be combined with char/vars/order or an ideal section",
                                   line_no, column)
        path = Path(value)
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        try:
            included = path.read_text(encoding='utf-8')
        except OSError as e:
            raise InputFormatError(f"Cannot read ring file '{value}': {e}", line_no, column)
        return parse_ring_file(included, path.parent)
    ambient = _ambient(doc)
    defining = _polynomials(doc.sections['ideal'], ambient)
    try:
        return QuotientRing(ambient, GroebnerIdeal(ambient, defining))
    except InhomogeneousIdealError as e:
        raise InputFormatError(str(e), 1, 1)


def parse_ring_file(text: str, base_dir: Optional[Path] = None) -> QuotientRing:
    """
    Raises:
        InputFormatError: On syntax errors, a non-prime characteristic or
            inhomogeneous generators.
    """
    return _ring_of(parse_document(text), base_dir)


def parse_ideal_file(text: str, base_dir: Optional[Path] = None) -> Tuple[QuotientRing, List[Polynomial]]:
    """The ring and the generators listed in the `generators:` section."""
    doc = parse_document(text)
    ring = _ring_of(doc, base_dir)
    return ring, _polynomials(doc.sections['generators'], ring.ring, homogeneous=False)


def parse_module_file(text: str, base_dir: Optional[Path] = None) -> PresentedModule:
    """The module of the `module:` section, or the ring itself when there is none.

    The section starts with `twists t_1, ..., t_r`, followed by r rows of
    the presentation matrix with comma-separated entries.
    """
    doc = parse_document(text)
    ring = _ring_of(doc, base_dir)
    if 'module' not in doc.present:
        return PresentedModule.free(ring)
    lines = doc.sections['module']
    if not lines or not lines[0][2].lower().startswith('twists'):
        where = lines[0] if lines else (1, 1, '')
        raise InputFormatError("Module section must start with a 'twists' line", where[0], where[1])
    line_no, column, body = lines[0]
    twists = []
    for entry in _split_entries(line_no, column + len('twists'), body[len('twists'):]):
        if not entry[2]:
            continue
        try:
            twists.append(int(entry[2]))
        except ValueError:
            raise InputFormatError(f"Twist must be an integer, got '{entry[2]}'", entry[0], entry[1])
    rows = []
    for row_line, row_column, row_text in lines[1:]:
        row = [_to_polynomial(entry, ring.ring)
               for entry in _split_entries(row_line, row_column, row_text)]
        rows.append(row)
    if rows and len(rows) != len(twists):
        raise InputFormatError(f"{len(rows)} rows for {len(twists)} twists", lines[-1][0], 1)
    if not rows:
        return PresentedModule.free(ring, twists)
    widths = {len(row) for row in rows}
    if len(widths) > 1:
        raise InputFormatError(f"Rows have different lengths {sorted(widths)}", lines[1][0], 1)
    try:
        return PresentedModule.from_rows(ring, rows, twists)
    except (ValueError, InhomogeneousIdealError) as e:
        raise InputFormatError(str(e), lines[1][0], 1)


def parse_sequence(text: str, ring: QuotientRing) -> ElementSequence:
    """Comma- or newline-separated homogeneous elements of positive degree."""
    elements = []
    for line_no, raw in enumerate(text.splitlines() or [''], start=1):
        for entry in _split_entries(line_no, 1, raw):
            if entry[2]:
                elements.append(ring.normal_form(_to_polynomial(entry, ring.ring)))
    if not elements:
        raise InputFormatError("Empty sequence", 1, 1)
    try:
        return ElementSequence(tuple(elements))
    except InhomogeneousIdealError as e:
        raise InputFormatError(str(e), 1, 1)


def _read(path: Path) -> str:
    try:
        return Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise InputFormatError(f"Cannot read '{path}': {e}")


def load_ring(path: Path) -> QuotientRing:
    return parse_ring_file(_read(path), Path(path).parent)


def load_ideal(path: Path) -> Tuple[QuotientRing, List[Polynomial]]:
    return parse_ideal_file(_read(path), Path(path).parent)


def load_module(path: Path) -> PresentedModule:
    module = parse_module_file(_read(path), Path(path).parent)
    module.name = module.name or Path(path).stem
    logger.info(f"Loaded {module!r} from {path}")
    return module
