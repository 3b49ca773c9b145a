from unittest import mock  # noqa

from .assertions import assert_raises  # noqa
from .assertions import assert_raises_message  # noqa
from .assertions import eq_  # noqa
from .assertions import expect_warnings  # noqa
from .assertions import is_  # noqa
from .assertions import is_false  # noqa
from .assertions import is_true  # noqa
from .assertions import ne_  # noqa
from .fixtures import TestBase  # noqa
