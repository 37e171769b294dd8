# Sphinx configuration for genus2-torsion.
# The API pages are regenerated from src/genus2_torsion on every build.

import os
import shutil
import sys

__location__ = os.path.dirname(__file__)
sys.path.insert(0, os.path.join(__location__, "../src"))

from sphinx.ext import apidoc  # noqa: E402

output_dir = os.path.join(__location__, "api")
module_dir = os.path.join(__location__, "../src/genus2_torsion")
shutil.rmtree(output_dir, ignore_errors=True)
try:
    apidoc.main(["--implicit-namespaces", "-f", "-o", output_dir, module_dir])
except Exception as e:
    print("Running `sphinx-apidoc` failed!\n{}".format(e))

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.intersphinx",
    "sphinx.ext.mathjax",
    "sphinx.ext.viewcode",
]
autodoc_member_order = "bysource"

source_suffix = ".rst"
master_doc = "index"
project = "genus2-torsion"
copyright = "2024, cdohmen"

try:
    from genus2_torsion import __version__ as version
except ImportError:
    version = ""
if not version or version.lower() == "unknown":
    version = os.getenv("READTHEDOCS_VERSION", "unknown")
release = version

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store", ".venv"]
pygments_style = "sphinx"
html_theme = "alabaster"

python_version = ".".join(map(str, sys.version_info[0:2]))
intersphinx_mapping = {
    "python": ("https://docs.python.org/" + python_version, None),
    "sympy": ("https://docs.sympy.org/latest", None),
    "click": ("https://click.palletsprojects.com/en/stable", None),
}
