from os import path

__version__ = "0.1.0"

package_dir = path.abspath(path.dirname(__file__))
