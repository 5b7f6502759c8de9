#
# Sphinx configuration of the conestab documentation
#
import os
import sys

sys.path.insert(0, os.path.abspath(os.path.join('..', '..')))

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode',
              'sphinx.ext.mathjax']

templates_path = ['.templates']

source_suffix = '.rst'

master_doc = 'contents'

project = 'Conestab'
copyright = '2019-2026, Conestab developers'
author = 'Conestab developers'

version = '1.0'
release = '1.0.0'

language = None

exclude_patterns = []

pygments_style = 'sphinx'

todo_include_todos = False

html_theme = 'alabaster'

html_theme_options = {
    'description': '<p align=left><i>Minimal cone stability workbench</i></p>',
    'show_powered_by': False,
    'fixed_sidebar': True,
}

html_sidebars = {
    '**': [
        'about.html',
        'navigation.html',
        'relations.html',
        'searchbox.html',
    ]
}

html_show_sourcelink = False

html_show_sphinx = False

htmlhelp_basename = 'Conestabdoc'

latex_documents = [
    (master_doc, 'Conestab.tex', 'Conestab Documentation',
     'Conestab developers', 'manual'),
]

man_pages = [
    (master_doc, 'conestab', 'Conestab Documentation',
     [author], 1)
]

autodoc_member_order = 'bysource'
