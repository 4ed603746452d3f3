import numpy as np
import pathlib
import shutil
from unittest import TestCase

from pbnkit.engine import (
    normalize_extension,
    makedir,
    save_yaml,
    read_yaml,
    dump_yaml,
    load_yaml,
    save_text,
    read_text,
)


class TestInout(TestCase):
    def setUp(self):
        self.tmpdir = (pathlib.Path(__file__) / "..").resolve() / "tmp_test_inout"
        self.tmpdir.mkdir(exist_ok=True)

        self.data = {"list": np.random.default_rng(0).random(10).tolist(), "b": "123"}

    def tearDown(self):
        shutil.rmtree(self.tmpdir)

    def test_normalize_extension_with_ext(self):
        path = "lol/text.elv"
        self.assertEqual(normalize_extension(path, ".elv"), pathlib.Path(path))

    def test_normalize_extension_without_ext(self):
        path = "lol/text"
        self.assertEqual(normalize_extension(path, ".yml"), pathlib.Path(path + ".yml"))

    def test_normalize_extension_keeps_yaml_and_json(self):
        for path in ["net.yaml", "net.json", "net.bn.yml"]:
            self.assertEqual(normalize_extension(path, ".yml"), pathlib.Path(path))

    def test_mkdir(self):
        makedir(self.tmpdir / "test" / "nested")
        self.assertTrue((self.tmpdir / "test" / "nested").is_dir())

    def test_roundtrip_yaml(self):
        save_yaml(self.tmpdir / "yamltest", self.data)
        result = read_yaml(self.tmpdir / "yamltest.yml")

        self.assertEqual(self.data, result)

    def test_numpy_scalars_are_dumped_as_numbers(self):
        text = dump_yaml({"p": np.float64(0.25), "n": np.int64(3)})
        self.assertEqual(load_yaml(text), {"p": 0.25, "n": 3})

    def test_keys_keep_their_order(self):
        text = dump_yaml({"name": "x", "nodes": [], "edges": [], "cpts": {}})
        self.assertEqual(list(load_yaml(text)), ["name", "nodes", "edges", "cpts"])

    def test_lists_are_inline(self):
        self.assertEqual(dump_yaml({"states": ["a", "b"]}).strip(), "states: [a, b]")

    def test_lists_of_mappings_are_blocks(self):
        text = dump_yaml({"nodes": [{"name": "A", "states": ["a0", "a1"]}]})
        self.assertEqual(text, "nodes:\n- name: A\n  states: [a0, a1]\n")

    def test_text(self):
        save_text(self.tmpdir / "x.txt", "hello\n")
        self.assertEqual(read_text(self.tmpdir / "x.txt"), "hello\n")
