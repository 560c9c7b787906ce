#!/usr/bin/env python
# -*- coding: utf-8 -*-

# This Source Code Form is subject to the terms of the
# Mozilla Public License, v. 2.0. If a copy of the MPL was not distributed
# with this file, You can obtain one at http://mozilla.org/MPL/2.0/.

import hashlib
import json
import math
import os
import sys


def parse_override(text):
    """Split a ``section.key=value`` flag into a key path and a value.

    The value is read as a JSON literal when possible (numbers, booleans,
    lists), otherwise it is kept as a plain string.
    """

    if '=' not in text:
        raise ValueError("override '{0}' is not of the form section.key=value".format(text))

    key, raw = text.split('=', 1)
    path = [int(x) if x.isdigit() else x for x in key.strip().split('.')]
    if any(x == '' for x in path):
        raise ValueError("override '{0}' has an empty key".format(text))

    try:
        value = json.loads(raw)
    except ValueError:
        value = raw

    return path, value

def apply_override(doc, path, value):
    node = doc
    for step in path[:-1]:
        if isinstance(node, list):
            node = node[step]
        else:
            node = node.setdefault(step, {})
    node[path[-1]] = value
    return doc

def format_key(path):
    res = ''
    for step in path:
        if isinstance(step, int):
            res += '[{0}]'.format(step)
        else:
            res += ('.' if res else '') + step
    return res

def content_hash(data):
    """Git blob hash of *data* (bytes)."""

    header = "blob {0}\0".format(len(data)).encode('ascii')
    return hashlib.sha1(header + data).hexdigest()

def wrap_angle(angle):
    """Normalize *angle* to (-pi, pi]."""

    res = math.fmod(angle, 2.0 * math.pi)
    if res <= -math.pi:
        res += 2.0 * math.pi
    elif res > math.pi:
        res -= 2.0 * math.pi
    return res

def output_path(directory, *names):
    target = os.path.join(directory, *names)
    parent = os.path.dirname(target)
    if parent and not os.path.exists(parent):
        os.makedirs(parent)
    return target

def uprint(*objects, sep=' ', end='\n', file=None):
    file = file or sys.stdout
    enc = getattr(file, 'encoding', None)
    if enc is None or enc.upper() == 'UTF-8':
        print(*objects, sep=sep, end=end, file=file, flush=True)
    else:
        f = lambda obj: str(obj).encode(enc, errors='backslashreplace').decode(enc)
        print(*map(f, objects), sep=sep, end=end, file=file, flush=True)
