# Sphinx configuration of the BSSit documentation.
import os
import sys

sys.path.insert(0, os.path.abspath('../..'))

import BSSit

project = 'BSSit'
copyright = '2026, BSSit Contributors'
author = 'BSSit Contributors'
release = '0.1.0'

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx.ext.napoleon',
    'sphinx.ext.autosummary',
    'sphinxcontrib_autodocgen',
    'myst_parser',
]

intersphinx_mapping = {
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
}

napoleon_custom_sections = [('Returns', 'params_style'),
                            ('Attributes', 'params_style'),
                            ('Raises', 'params_style')]
napoleon_include_special_with_doc = False

# The examples are documented by hand in examples.rst
autodocgen_config = [{
    'modules': [BSSit],
    'generated_source_dir': './autodocgen-output/',
    'skip_module_regex': '(.*[.]__|BSSit[.]examples.*)',
    'write_documented_items_output_file': 'autodocgen_documented_items.txt',
    'autodoc_options_decider': {
        'BSSit.priors': {'inherited-members': True},
    },
    'module_title_decider': lambda modulename: 'API Reference' if modulename == 'BSSit' else modulename,
}]

autoclass_content = 'both'

templates_path = ['_templates']
exclude_patterns = []

html_theme = 'sphinx_rtd_theme'
html_static_path = ['_static']
