import json

import pytest

from repvar.finite_group import group_to_json_dict, named_group

SUITE_GROUP_NAMES = ("z2", "z3", "z4", "z2xz2", "s3", "d4", "q8", "a4")


@pytest.fixture(scope="session")
def suite_groups():
    """The eight groups every cross-check sweeps over."""
    return {name: named_group(name) for name in SUITE_GROUP_NAMES}


@pytest.fixture()
def group_file_factory(tmp_path):
    """Write a named group to a JSON table file and return the path."""

    def factory(name):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(group_to_json_dict(named_group(name))))
        return path

    return factory
