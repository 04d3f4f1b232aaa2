"""Authors the golden NIfTI-1 fixtures with struct, independent of the C++ writer.

2x2x2 uint8 volume with values 0..7 in x-fastest order, 1 mm voxels.
Run from this directory: python3 make_golden.py
"""
import gzip
import struct


def header(endian, dims, datatype, bitpix, pixdim, descrip=b"golden"):
    h = bytearray(348)
    struct.pack_into(endian + "i", h, 0, 348)
    h[38] = ord("r")
    struct.pack_into(endian + "8h", h, 40, 3, *dims, 1, 1, 1, 1)
    struct.pack_into(endian + "h", h, 70, datatype)
    struct.pack_into(endian + "h", h, 72, bitpix)
    struct.pack_into(endian + "4f", h, 76, 1.0, *pixdim)
    struct.pack_into(endian + "f", h, 108, 352.0)
    struct.pack_into(endian + "f", h, 112, 0.0)
    struct.pack_into(endian + "f", h, 116, 0.0)
    h[123] = 2
    h[148:148 + len(descrip)] = descrip
    h[344:348] = b"n+1\0"
    return bytes(h) + b"\0\0\0\0"


payload = bytes(range(8))
little = header("<", (2, 2, 2), 2, 8, (1.0, 1.0, 1.0)) + payload
big = header(">", (2, 2, 2), 2, 8, (1.0, 1.0, 1.0)) + payload

with open("golden_2x2x2_u8.nii", "wb") as f:
    f.write(little)
with open("golden_2x2x2_u8_be.nii", "wb") as f:
    f.write(big)
with open("golden_2x2x2_u8.nii.gz", "wb") as f:
    f.write(gzip.compress(little, mtime=0))

# int16 with scaling: raw -2..5, slope 0.5, intercept 10, spacing 0.5 x 1 x 2.
i16 = bytearray(header("<", (2, 2, 2), 4, 16, (0.5, 1.0, 2.0), b"scaled"))
struct.pack_into("<f", i16, 112, 0.5)
struct.pack_into("<f", i16, 116, 10.0)
i16 += struct.pack("<8h", *range(-2, 6))
with open("golden_2x2x2_i16_scaled.nii", "wb") as f:
    f.write(bytes(i16))
