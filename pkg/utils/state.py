import base64
import json
import zlib

from simflat.errors import MalformedEntry
from simflat.exact import ExactMatrix, matrix, qq, to_strings


def matrices_to_payload(mats: list[ExactMatrix]) -> list[list[list[str]]]:
    return [to_strings(M) for M in mats]


def matrix_from_payload(rows: list[list[str]]) -> ExactMatrix:
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise MalformedEntry("matrix rows must be non-empty and of equal length")
    try:
        return matrix([[qq(str(x)) for x in r] for r in rows], len(rows[0]))
    except (ValueError, ZeroDivisionError) as e:
        raise MalformedEntry(f"bad matrix entry: {e}")


def matrices_from_payload(data: list[list[list[str]]]) -> list[ExactMatrix]:
    return [matrix_from_payload(rows) for rows in data]


def matrices_compress(mats: list[ExactMatrix]) -> str:
    return base64.b64encode(zlib.compress(json.dumps(matrices_to_payload(mats)).encode())).decode()


def matrices_decompress(data: str) -> list[ExactMatrix]:
    try:
        json_str = zlib.decompress(base64.b64decode(data.encode())).decode()
    except (ValueError, zlib.error) as e:
        raise MalformedEntry(f"compressed payload could not be decoded: {e}")
    return matrices_from_payload(json.loads(json_str))
