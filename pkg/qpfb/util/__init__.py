from .exc import CommandError  # noqa
from .exc import DomainError  # noqa
from .exc import VerificationFailure  # noqa
from .langhelpers import Dispatcher  # noqa
from .langhelpers import immutabledict  # noqa
from .langhelpers import memoized_property  # noqa
from .langhelpers import to_list  # noqa
from .messaging import err  # noqa
from .messaging import format_float  # noqa
from .messaging import msg  # noqa
from .messaging import warn  # noqa
from .messaging import write_outstream  # noqa
from .templating import template_to_string  # noqa
