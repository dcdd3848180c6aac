import pytest

from src.errors import ModelFileError
from src.models import MapModel, power_model
from src.models.naming import PowerGenerator
from src.secat.modelfile import parse_model, read_model, save_model, write_model

from .conftest import CP2_TEXT


def test_parse_cp2():
    M = parse_model(CP2_TEXT)
    assert M.dgl.name == "CP2"
    assert M.dgl.ids == ["x", "y"]
    assert M.domain == frozenset()
    assert str(M.dgl.differential("y")) == "2*x.x"


def test_differential_may_precede_its_generators():
    M = parse_model("d y = [x,x]\ngenerator y 3\ngenerator x 1 domain\n")
    assert M.domain_ids == ("x",)
    assert M.dgl.name == "L"


def test_stage_tag_is_kept():
    M = parse_model("generator x 1\ngenerator y 3 stage=4\nd y = [x,x]\n")
    assert M.dgl.stage("y") == 4
    assert "stage=4" in write_model(M)


def test_round_trip_of_a_power_model(cp2):
    P = power_model(cp2, 2, 6)
    text = write_model(P.dgl)
    assert "omit s{y@1,y@2} 7" in text
    again = parse_model(text)
    assert again.dgl == P.dgl
    assert isinstance(again.dgl.generator("s{x@1,y@2}"), PowerGenerator)


def test_round_trip_keeps_the_domain(cp2):
    M = MapModel(cp2, frozenset({"x"}))
    assert parse_model(write_model(M)) == M


@pytest.mark.parametrize("text,line,fragment", [
    ("generator x 1\nbogus x\n", 2, "Unknown directive"),
    ("generator x one\n", 1, "integer"),
    ("generator x 0\n", 1, "degree"),
    ("generator x 1\ngenerator x 2\n", 2, "already declared"),
    ("generator x 1\n\nd x = [x\n", 3, "Expected"),
    ("generator x 1\nd z = x\n", 2, "undeclared"),
    ("generator x 1 fancy\n", 1, "option"),
    ("generator x 1\ngenerator y 3\nd y = [x,x]\nd y = [x,x]\n", 4, "twice"),
])
def test_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ModelFileError) as excinfo:
        parse_model(text)
    assert excinfo.value.line == line
    assert fragment in str(excinfo.value)
    assert str(excinfo.value).startswith(f"line {line}: ")


def test_degree_mismatch_is_a_model_file_error():
    with pytest.raises(ModelFileError):
        parse_model("generator x 1\ngenerator y 2\nd y = [x,x]\n")


def test_read_and_save(tmp_path, cp2):
    path = tmp_path / "cp2.dgl"
    text = save_model(cp2, path)
    assert path.read_text(encoding="utf-8") == text
    assert read_model(path).dgl == cp2
    with pytest.raises(ModelFileError):
        read_model(tmp_path / "missing.dgl")
