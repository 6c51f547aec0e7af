import errno
import json
import logging
import os

log = logging.getLogger(__name__)


def load_json_file(filename, mode="r") -> dict:
    """Load a JSON file and return its contents

    @param filename  The name of the file to load
    @param mode      The mode to open the file in. Should be "r" except in very unique circumstances

    @return  The file's contents as a dict, or an empty dict if the file is missing
    """
    try:
        with open(filename, mode) as file:
            return json.load(file)
    except ValueError as e:
        log.warning(f"Unable to parse JSON data from {filename}: {e}")
        return {}
    except OSError as e:
        if e.errno == errno.ENOENT:
            log.info(f"{filename} does not exist. Using default settings")
        else:
            log.warning(f"Unable to open {filename}: {e}")
        return {}


def read_lines(filename) -> list:
    """Read a text file as a list of lines without their line feeds.

    Raises `OSError` if the file cannot be read; callers decide what a missing file means.
    """
    with open(filename, "r", newline="\n") as file:
        return file.read().splitlines()


def write_text_atomic(filename, text: str):
    """Replace the contents of a file so that readers see either the old or the new version

    The text is written to a sibling temporary file which is then renamed over the target.

    @param filename  The file to replace
    @param text      The complete new contents
    """
    tmp = f"{filename}.tmp"
    with open(tmp, "w", newline="\n") as file:
        file.write(text)
        file.flush()
        os.fsync(file.fileno())
    os.replace(tmp, filename)


def append_text(filename, text: str):
    """Append text to the end of a file, creating it if necessary"""
    with open(filename, "a", newline="\n") as file:
        file.write(text)


def delete_file(filename):
    try:
        os.remove(filename)
    except OSError:
        pass


def truncate_file(filename, size: int):
    """Cut a file back to its first size bytes, undoing appends made after measuring it"""
    with open(filename, "rb+") as file:
        file.truncate(size)
