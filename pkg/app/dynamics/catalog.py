"""
Catalog of dynamical systems satisfying the commutativity condition.

Every entry is a translation on a finite abelian group whose backward
filtration is given by the cosets of an increasing chain of subgroups;
translations map cosets onto cosets, so the condition holds. Construction
still runs the exact check.
"""
import itertools

import numpy as np

from core.exceptions import InvalidInputError
from core.models import AtomSpace, BackwardFiltration, Partition
from dynamics.models import DynamicalSystem, Transformation


def _translation(orders, shift):
    coords = np.indices(orders).reshape(len(orders), -1)
    moved = (coords + np.asarray(shift).reshape(-1, 1)) \
        % np.asarray(orders).reshape(-1, 1)
    return Transformation(np.ravel_multi_index(tuple(moved), orders))


def cyclic_rotation(m, depth=None):
    """Z_{2^m} with T = +1 and G_n the residue classes mod 2^(m-n)"""
    depth = m if depth is None else depth
    if m < 0 or not 0 <= depth <= m:
        raise InvalidInputError(f'Need 0 <= depth <= m, got m={m}, '
                                f'depth={depth}')
    size = 2 ** m
    atoms = np.arange(size)
    levels = tuple(Partition(atoms % 2 ** (m - n)) for n in range(depth + 1))
    return DynamicalSystem(
        space=AtomSpace.uniform(size),
        map=Transformation((atoms + 1) % size),
        filtration=BackwardFiltration(levels),
        commutativity_checked=True,
        name=f'cyclic:{m}:{depth}',
    )


def _as_element(element, orders):
    element = tuple(int(x) for x in element)
    if len(element) != len(orders):
        raise InvalidInputError(
            f'Element {element} does not match group orders {orders}'
        )
    return tuple(x % order for x, order in zip(element, orders))


def _check_subgroup(subgroup, orders):
    if tuple(0 for _ in orders) not in subgroup:
        raise InvalidInputError('A subgroup must contain the identity')
    for x, y in itertools.product(subgroup, repeat=2):
        total = tuple((a + b) % o for a, b, o in zip(x, y, orders))
        if total not in subgroup:
            raise InvalidInputError(
                f'{sorted(subgroup)} is not closed under addition'
            )


def _coset_partition(subgroup, orders):
    coords = np.indices(orders).reshape(len(orders), -1)
    order_column = np.asarray(orders).reshape(-1, 1)
    labels = None
    for element in subgroup:
        moved = (coords + np.asarray(element).reshape(-1, 1)) % order_column
        index = np.ravel_multi_index(tuple(moved), orders)
        labels = index if labels is None else np.minimum(labels, index)
    return Partition.from_labels(labels)


def _default_chain(orders):
    chain = []
    for n in range(len(orders) + 1):
        ranges = [range(order) if i < n else range(1)
                  for i, order in enumerate(orders)]
        chain.append(list(itertools.product(*ranges)))
    return chain


def group_translation(orders, translation=None, chain=None):
    """Translation on a product of cyclic groups, cosets of a chain"""
    orders = tuple(int(order) for order in orders)
    if not orders or min(orders) < 1:
        raise InvalidInputError(f'Invalid group orders {orders}')
    if translation is None:
        translation = (1,) + (0,) * (len(orders) - 1)
    translation = _as_element(translation, orders)
    chain = _default_chain(orders) if chain is None else chain

    subgroups = [
        {_as_element(element, orders) for element in subgroup}
        for subgroup in chain
    ]
    if not subgroups or len(subgroups[0]) != 1:
        raise InvalidInputError('The chain must start at the trivial '
                                'subgroup')
    for n, subgroup in enumerate(subgroups):
        _check_subgroup(subgroup, orders)
        if n and not subgroups[n - 1] <= subgroup:
            raise InvalidInputError(f'Subgroup {n} does not contain '
                                    f'subgroup {n - 1}')

    size = int(np.prod(orders))
    return DynamicalSystem(
        space=AtomSpace.uniform(size),
        map=_translation(orders, translation),
        filtration=BackwardFiltration(tuple(
            _coset_partition(sorted(subgroup), orders)
            for subgroup in subgroups
        )),
        commutativity_checked=True,
        name='group:' + 'x'.join(str(order) for order in orders),
    )


def product_torus(m1, m2, shifts=((1, 0), (0, 1)), depth=None):
    """Two commuting translations on Z_{2^m1} x Z_{2^m2}"""
    if m1 < 0 or m2 < 0:
        raise InvalidInputError('Torus exponents must be nonnegative')
    orders = (2 ** m1, 2 ** m2)
    full_depth = max(m1, m2)
    depth = full_depth if depth is None else depth
    if not 0 <= depth <= full_depth:
        raise InvalidInputError(f'Need 0 <= depth <= {full_depth}')
    first, second = (_as_element(shift, orders) for shift in shifts)

    coords = np.indices(orders).reshape(2, -1)
    levels = []
    for n in range(depth + 1):
        rows = coords[0] % 2 ** max(m1 - n, 0)
        columns = coords[1] % 2 ** max(m2 - n, 0)
        levels.append(Partition.from_labels(rows * orders[1] + columns))

    return DynamicalSystem(
        space=AtomSpace.uniform(orders[0] * orders[1]),
        map=_translation(orders, first),
        filtration=BackwardFiltration(tuple(levels)),
        commutativity_checked=True,
        commuting_map=_translation(orders, second),
        name=f'torus:{m1}:{m2}',
    )


def transposition_example():
    """Z_4 with atoms 0 and 1 swapped: fails the condition at level 1"""
    system = cyclic_rotation(2)
    return DynamicalSystem(
        space=system.space,
        map=Transformation([1, 0, 2, 3]),
        filtration=system.filtration,
        name='transposition:4',
    )


KINDS = {
    'cyclic_rotation': cyclic_rotation,
    'group_translation': group_translation,
    'product_torus': product_torus,
}


def catalog_system(kind, **params):
    """Build a catalog system of the given kind"""
    try:
        builder = KINDS[kind]
    except KeyError:
        raise InvalidInputError(
            f'Unknown system kind {kind!r}; choose from {sorted(KINDS)}'
        ) from None
    try:
        return builder(**params)
    except TypeError as exc:
        raise InvalidInputError(f'Bad parameters for {kind}: {exc}') \
            from exc


def _spec_ints(parts, spec):
    try:
        return [int(part) for part in parts]
    except ValueError:
        raise InvalidInputError(f'Malformed system spec {spec!r}') from None


def _spec_shift(text, spec):
    return tuple(_spec_ints(text.split(','), spec))


def system_from_spec(spec):
    """Build a system from a spec string.

    cyclic:<m>[:<depth>], group:<o1>x<o2>..., torus:<m1>:<m2>[:s1,s2:t1,t2]
    and transposition.
    """
    kind, _, rest = str(spec).strip().partition(':')
    parts = rest.split(':') if rest else []
    if kind == 'cyclic' and len(parts) in (1, 2):
        return cyclic_rotation(*_spec_ints(parts, spec))
    if kind == 'group' and len(parts) == 1:
        return group_translation(_spec_ints(parts[0].split('x'), spec))
    if kind == 'torus' and len(parts) == 2:
        return product_torus(*_spec_ints(parts, spec))
    if kind == 'torus' and len(parts) == 4:
        m1, m2 = _spec_ints(parts[:2], spec)
        shifts = (_spec_shift(parts[2], spec), _spec_shift(parts[3], spec))
        return product_torus(m1, m2, shifts=shifts)
    if kind == 'transposition' and len(parts) <= 1:
        return transposition_example()
    raise InvalidInputError(f'Malformed system spec {spec!r}')
