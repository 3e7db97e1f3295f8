"""Rebuild a statement tree from YIN text with a generic XML reader.

Used as an oracle for the emitter: it only knows the published keyword
table and the extension argument declarations.
"""

from xml.dom import minidom

from yangc.syntax import RawStatement
from yangc.yin import ARGUMENT_TABLE, DEFAULT_STYLE, UNDECLARED_EXTENSION_STYLE


def _elements(node):
    return [c for c in node.childNodes if c.nodeType == c.ELEMENT_NODE]


def _text(node):
    return "".join(c.data for c in node.childNodes if c.nodeType in (c.TEXT_NODE, c.CDATA_SECTION_NODE))


def _rebuild(el, ext_styles):
    keyword = el.tagName
    if ":" in keyword:
        prefix, local = keyword.split(":", 1)
        style = ext_styles.get((prefix, local), UNDECLARED_EXTENSION_STYLE)
        arg_tag = f"{prefix}:{style.name}"
    else:
        style = ARGUMENT_TABLE.get(keyword, DEFAULT_STYLE) or DEFAULT_STYLE
        arg_tag = style.name
    children = _elements(el)
    argument = None
    if style.element:
        if children and children[0].tagName == arg_tag:
            argument = _text(children[0])
            children = children[1:]
    elif el.hasAttribute(style.name):
        argument = el.getAttribute(style.name)
    return RawStatement(keyword, argument, [_rebuild(c, ext_styles) for c in children])


def read_yin(text, ext_styles=None):
    doc = minidom.parseString(text.encode("utf-8"))
    return _rebuild(doc.documentElement, ext_styles or {})
