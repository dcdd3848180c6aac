"""
Model File Format

UTF-8, one directive per line, '#' starts a comment:

    name S2xS2
    generator x@1 1 domain
    generator y 3 stage=1
    d y = [x@1,x@1]
    omit s{x@1,x@2,x@3} 9

`domain` marks the V generators of a map model; everything else is W.
`stage=m` pins a cone-length stage and is only written when it differs
from the inferred one. `omit` lists generators a degree-bounded construction
did not build. Reading is two-pass so `d` lines may precede the generators
they mention.
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from ..algebra.basis import render_element
from ..algebra.expr import expand
from ..algebra.parser import is_identifier, parse
from ..algebra.tensor import Generator, TensorElement
from ..dgl.dgl import Dgl
from ..errors import DglError, InputError, ModelFileError
from ..models.fatwedge import MapModel
from ..models.naming import as_power_generator

logger = logging.getLogger(__name__)


def _degree(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ModelFileError(f"Degree must be an integer, got '{token}'", line) from None


def _identifier(token: str, line: int) -> str:
    if not is_identifier(token):
        raise ModelFileError(f"Invalid generator identifier '{token}'", line)
    return token


def parse_model(text: str) -> MapModel:
    """
    Parse model file text

    Raises:
        ModelFileError: malformed directive (message carries the line number)
    """
    name = "L"
    generators: List[Generator] = []
    seen: Dict[str, int] = {}
    domain: List[str] = []
    stages: Dict[str, int] = {}
    omitted: List[Generator] = []
    pending: List[Tuple[int, str, str]] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()

        if keyword == "name":
            if not rest or " " in rest:
                raise ModelFileError("Expected 'name <IDENT>'", number)
            name = rest
        elif keyword == "generator":
            fields = rest.split()
            if len(fields) < 2:
                raise ModelFileError("Expected 'generator <IDENT> <DEGREE> [domain] [stage=m]'", number)
            gid = _identifier(fields[0], number)
            if gid in seen:
                raise ModelFileError(f"Generator '{gid}' already declared on line {seen[gid]}", number)
            try:
                g = as_power_generator(Generator(gid, _degree(fields[1], number)))
            except InputError as e:
                raise ModelFileError(str(e), number) from e
            for option in fields[2:]:
                if option == "domain":
                    domain.append(gid)
                elif option.startswith("stage="):
                    stages[gid] = _degree(option[len("stage="):], number)
                else:
                    raise ModelFileError(f"Unknown generator option '{option}'", number)
            seen[gid] = number
            generators.append(g)
        elif keyword == "d":
            target, equals, expression = rest.partition("=")
            target = target.strip()
            if not equals or not target:
                raise ModelFileError("Expected 'd <IDENT> = <lie-expr>'", number)
            pending.append((number, target, expression.strip()))
        elif keyword == "omit":
            fields = rest.split()
            if len(fields) != 2:
                raise ModelFileError("Expected 'omit <IDENT> <DEGREE>'", number)
            try:
                omitted.append(as_power_generator(
                    Generator(_identifier(fields[0], number), _degree(fields[1], number))
                ))
            except InputError as e:
                raise ModelFileError(str(e), number) from e
        else:
            raise ModelFileError(f"Unknown directive '{keyword}'", number)

    alphabet = {g.id: g for g in generators}
    differential: Dict[str, TensorElement] = {}
    for number, target, expression in pending:
        if target not in alphabet:
            raise ModelFileError(f"d of undeclared generator '{target}'", number)
        if target in differential:
            raise ModelFileError(f"Differential of '{target}' given twice", number)
        try:
            differential[target] = expand(parse(expression, alphabet))
        except InputError as e:
            raise ModelFileError(str(e), number) from e

    try:
        dgl = Dgl(generators, differential, name=name, stages=stages, omitted=omitted)
        model = MapModel(dgl, frozenset(domain))
    except ModelFileError:
        raise
    except DglError as e:
        raise ModelFileError(str(e)) from e
    logger.debug(f"Read {name}: {len(generators)} generator(s), {len(domain)} in the domain")
    return model


def _pinned_stages(L: Dgl) -> Dict[str, int]:
    """Stages the reader would not infer on its own"""
    pinned: Dict[str, int] = {}
    read: Dict[str, int] = {}
    for g in sorted(L.generators, key=lambda h: h.degree):
        dg = L.differential(g.id)
        guess = 1 + max(read[letter] for letter in dg.letters()) if dg else 0
        if L.stage(g.id) != guess:
            pinned[g.id] = L.stage(g.id)
        read[g.id] = L.stage(g.id)
    return pinned


def write_model(model: Union[MapModel, Dgl]) -> str:
    """Model file text; parse_model(write_model(M)) == M"""
    if isinstance(model, Dgl):
        model = MapModel(model)
    L = model.dgl
    pinned = _pinned_stages(L)
    alphabet = L.alphabet

    lines = [f"name {L.name}"]
    for g in L.generators:
        fields = ["generator", g.id, str(g.degree)]
        if g.id in model.domain:
            fields.append("domain")
        if g.id in pinned:
            fields.append(f"stage={L.stage(g.id)}")
        lines.append(" ".join(fields))
    for g in L.generators:
        dg = L.differential(g.id)
        if dg:
            lines.append(f"d {g.id} = {render_element(dg, alphabet)}")
    for g in L.omitted:
        lines.append(f"omit {g.id} {g.degree}")
    return "\n".join(lines) + "\n"


def read_model(path: Union[str, Path]) -> MapModel:
    """
    Read a model file from disk

    Raises:
        ModelFileError: unreadable or malformed file
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ModelFileError(f"Cannot read {path}: {e.strerror}") from e
    return parse_model(text)


def save_model(model: Union[MapModel, Dgl], path: Optional[Union[str, Path]]) -> str:
    """Write model file text to path (when given) and return it"""
    text = write_model(model)
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
        logger.info(f"Model written to {path}")
    return text
