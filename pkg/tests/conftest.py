"""Shared models for the test suite"""

import pytest

from src.secat.modelfile import parse_model

S2_TEXT = """\
# Quillen minimal model of the 2-sphere
name S2
generator v 1
"""

S3_TEXT = """\
name S3
generator v 2
"""

CP2_TEXT = """\
name CP2
generator x 1
generator y 3
d y = [x,x]
"""

S3XS3_TEXT = """\
name S3xS3
generator a 2
generator b 2
generator c 5
d c = [a,b]
"""

POINT_TEXT = "name pt\n"

NOT_MINIMAL_TEXT = """\
name cone
generator a 1
generator b 2
d b = a
"""

BAD_D_SQUARED_TEXT = """\
name broken
generator a 1
generator b 2
generator c 4
d b = a
d c = [a,b]
"""


@pytest.fixture
def s2():
    return parse_model(S2_TEXT).dgl


@pytest.fixture
def s3():
    return parse_model(S3_TEXT).dgl


@pytest.fixture
def cp2():
    return parse_model(CP2_TEXT).dgl


@pytest.fixture
def s3xs3():
    return parse_model(S3XS3_TEXT).dgl


@pytest.fixture
def point():
    return parse_model(POINT_TEXT).dgl


@pytest.fixture
def model_dir(tmp_path):
    """Model files on disk for the CLI"""
    files = {
        "s2.dgl": S2_TEXT,
        "s3.dgl": S3_TEXT,
        "cp2.dgl": CP2_TEXT,
        "cone.dgl": NOT_MINIMAL_TEXT,
        "broken.dgl": BAD_D_SQUARED_TEXT,
    }
    for name, text in files.items():
        (tmp_path / name).write_text(text, encoding="utf-8")
    return tmp_path
