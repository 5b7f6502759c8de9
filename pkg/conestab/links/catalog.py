#
# This file is part of conestab software.
#
# Copyright (c) 2019-2026, Conestab developers
# License: BSD, see LICENSE.txt
#
# Link catalog and its JSON form
#
from conestab.error import ConfigError
from conestab.links import complexcone
from conestab.links import harveylawson
from conestab.links import hopf
from conestab.links import quadric
from conestab.links import spheres

LINK_TYPES = dict(
    (cls.TYPE, cls) for cls in (
        spheres.ProductOfSpheres,
        spheres.RoundSphere,
        hopf.HopfGraphLink,
        quadric.ComplexQuadricLink,
        harveylawson.HarveyLawsonT2Link,
        complexcone.ComplexConeLink,
    )
)


def to_json(spec):
    doc = {'type': spec.TYPE}
    doc.update(spec.params())
    return doc


def from_json(doc):
    """Build a link from {"type": ..., parameters...}"""
    try:
        params = dict(doc)
        link_type = params.pop('type')

    except (TypeError, ValueError, KeyError):
        raise ConfigError('Link document must be an object with a "type"')

    try:
        cls = LINK_TYPES[link_type]

    except KeyError:
        raise ConfigError(
            'Unknown link type "%s", known types are: %s' % (
                link_type, ', '.join(sorted(LINK_TYPES))))

    try:
        return cls(**params)

    except TypeError as exc:
        raise ConfigError('Bad parameters for link "%s": %s' % (link_type, exc))


def lawson(k, l):
    return spheres.ProductOfSpheres(k, l)


def lawson_osserman():
    return hopf.HopfGraphLink()
