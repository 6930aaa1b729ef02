from pathlib import Path

import pytest

from src.input_formats import (
    InputFormatError,
    load_ideal,
    load_module,
    load_ring,
    parse_document,
    parse_ideal_file,
    parse_module_file,
    parse_ring_file,
    parse_sequence,
)

DATA = Path(__file__).resolve().parent.parent / 'data'

HYPERSURFACE = """\
# k over F_2[x,y]/(x^2 + xy)
char 2
vars x, y
ideal:
x^2 + x*y
module:
twists 0
x, y
"""


def test_document_sections_and_directives():
    doc = parse_document(HYPERSURFACE)
    assert doc.char == (2, 6, '2')
    assert doc.present == {'ideal', 'module'}
    assert doc.sections['module'][0] == (7, 1, 'twists 0')


def test_module_file():
    module = parse_module_file(HYPERSURFACE)
    assert module.rank == 1
    assert len(module.relations) == 2
    assert module.ring.describe() == 'F_2[x,y]/(x^2 + x*y)'


def test_missing_module_section_gives_the_free_module():
    module = parse_module_file("char 3\nvars x\n")
    assert module.rank == 1 and module.relations == ()
    free = parse_module_file("char 3\nvars x\nmodule:\ntwists 0, 1\n")
    assert free.twists == (0, 1)


def test_order_with_priority():
    ring = parse_ring_file("char 5\nvars x, y\norder lex y, x\n")
    assert ring.ring.order.priority == (1, 0)
    assert ring.ring.order.kind.value == 'lex'


def test_ring_include_resolves_relative_paths(tmp_path):
    (tmp_path / 'base.ring').write_text("char 2\nvars x, y\nideal:\nx*y\n")
    (tmp_path / 'M.mod').write_text("ring base.ring\nmodule:\ntwists 0\nx\n")
    module = load_module(tmp_path / 'M.mod')
    assert module.name == 'M'
    assert module.ring == load_ring(tmp_path / 'base.ring')


def test_ideal_generators_may_be_inhomogeneous():
    ring, gens = parse_ideal_file("char 7\nvars x, y\ngenerators:\nx + y^2, y\n")
    assert [str(g) for g in gens] == ['y^2 + x', 'y']
    assert ring.is_polynomial_ring


@pytest.mark.parametrize('text, line, column, fragment', [
    ("char 2\nvar x\n", 2, 1, "Unknown directive"),
    ("char 4\nvars x\n", 1, 6, "not prime"),
    ("char two\nvars x\n", 1, 6, "must be an integer"),
    ("char 2\nvars x, y\nideal:\nx^2 + z\n", 4, 7, "Unknown variable 'z'"),
    ("char 2\nvars x, y\nideal:\nx, y + w\n", 4, 8, "Unknown variable 'w'"),
    ("char 2\nvars x, y\nideal:\nx^2 + y\n", 4, 1, "not homogeneous"),
    ("char 2\nchar 3\n", 2, 1, "given twice"),
    ("char 2\nvars x\nideal:\nx\nideal:\n", 5, 1, "appears twice"),
    ("vars x\n", 1, 1, "Missing 'char'"),
])
def test_errors_carry_line_and_column(text, line, column, fragment):
    with pytest.raises(InputFormatError) as info:
        parse_ring_file(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert fragment in info.value.message


@pytest.mark.parametrize('text, fragment', [
    ("char 2\nvars x, y\nmodule:\nx, y\n", "must start with a 'twists' line"),
    ("char 2\nvars x, y\nmodule:\ntwists 0, a\n", "Twist must be an integer"),
    ("char 2\nvars x, y\nmodule:\ntwists 0, 0\nx, y\n", "1 rows for 2 twists"),
    ("char 2\nvars x, y\nmodule:\ntwists 0, 0\nx, y\nx\n", "different lengths"),
    ("char 2\nvars x, y\nmodule:\ntwists 0\nx + y^2\n", "not homogeneous"),
])
def test_module_errors(text, fragment):
    with pytest.raises(InputFormatError) as info:
        parse_module_file(text)
    assert fragment in str(info.value)


def test_ring_directive_excludes_a_local_header(tmp_path):
    (tmp_path / 'base.ring').write_text("char 2\nvars x\n")
    with pytest.raises(InputFormatError) as info:
        parse_module_file("ring base.ring\nchar 2\n", tmp_path)
    assert "cannot be combined" in info.value.message
    with pytest.raises(InputFormatError):
        parse_module_file("ring missing.ring\n", tmp_path)


def test_sequences():
    ring = parse_ring_file("char 2\nvars x, y\nideal:\nx^2 + x*y\n")
    seq = parse_sequence("y, x^2\nx", ring)
    # x^2 reduces to x*y in the quotient
    assert [str(f) for f in seq.elements] == ['y', 'x*y', 'x']
    with pytest.raises(InputFormatError):
        parse_sequence(" , ", ring)
    with pytest.raises(InputFormatError):
        parse_sequence("x + y^2", ring)
    with pytest.raises(InputFormatError) as info:
        parse_sequence("x, q", ring)
    assert info.value.column == 4


def test_shipped_data_files():
    determinantal = load_ring(DATA / 'determinantal_3x3.ring')
    assert determinantal.nvars == 9
    assert len(determinantal.defining.generators) == 9
    module = load_module(DATA / 'L.mod')
    assert module.name == 'L'
    assert module.ring == determinantal
    assert len(module.relations) == 2
    ring, gens = load_ideal(DATA / 'xy.ideal')
    assert [str(g) for g in gens] == ['x', 'y']
    with pytest.raises(InputFormatError):
        load_ring(DATA / 'does-not-exist.ring')
