import collections.abc


def to_list(x, default=None):
    if x is None:
        return default
    elif isinstance(x, str):
        return [x]
    elif isinstance(x, collections.abc.Iterable):
        return list(x)
    else:
        return [x]


class memoized_property(object):

    """A read-only @property that is only evaluated once."""

    def __init__(self, fget, doc=None):
        self.fget = fget
        self.__doc__ = doc or fget.__doc__
        self.__name__ = fget.__name__

    def __get__(self, obj, cls):
        if obj is None:
            return self
        obj.__dict__[self.__name__] = result = self.fget(obj)
        return result


class immutabledict(dict):
    def _immutable(self, *arg, **kw):
        raise TypeError("%s object is immutable" % self.__class__.__name__)

    __delitem__ = (
        __setitem__
    ) = __setattr__ = clear = pop = popitem = setdefault = update = _immutable

    def __new__(cls, *args):
        new = dict.__new__(cls)
        dict.__init__(new, *args)
        return new

    def __init__(self, *args):
        pass

    def __reduce__(self):
        return immutabledict, (dict(self),)

    def __repr__(self):
        return "immutabledict(%s)" % dict.__repr__(self)


class Dispatcher(object):
    """Registry of callables keyed by name.

    Registration order is preserved, so :meth:`.Dispatcher.names`
    iterates in the order targets were declared.

    """

    def __init__(self, kind="target"):
        self._registry = collections.OrderedDict()
        self.kind = kind

    def dispatch_for(self, target):
        def decorate(fn):
            assert target not in self._registry, target
            self._registry[target] = fn
            return fn

        return decorate

    def dispatch(self, target):
        try:
            return self._registry[target]
        except KeyError:
            raise ValueError(
                "no %s named %r; choose from %s"
                % (self.kind, target, ", ".join(self._registry))
            )

    def names(self):
        return list(self._registry)

    def __contains__(self, target):
        return target in self._registry
