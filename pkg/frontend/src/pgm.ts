// Parser for the binary portable graymap (P5) the service's /raster
// endpoint returns: "P5\n<width> <height>\n<maxval>\n" then one byte
// per pixel, row-major from the top.

export interface Graymap {
  width: number;
  height: number;
  maxval: number;
  pixels: Uint8Array;
}

function isSpace(byte: number): boolean {
  return byte === 0x20 || byte === 0x09 || byte === 0x0a || byte === 0x0d;
}

export function parsePgm(bytes: Uint8Array): Graymap {
  if (bytes.length < 2 || bytes[0] !== 0x50 || bytes[1] !== 0x35) {
    throw new Error("not a binary graymap: missing P5 magic");
  }

  let pos = 2;
  const nextToken = (): number => {
    while (pos < bytes.length && isSpace(bytes[pos])) pos++;
    const start = pos;
    while (pos < bytes.length && !isSpace(bytes[pos])) pos++;
    if (start === pos) {
      throw new Error("truncated graymap header");
    }
    const token = String.fromCharCode(...bytes.subarray(start, pos));
    const value = Number(token);
    if (!Number.isInteger(value) || value < 0) {
      throw new Error(`bad graymap header token: ${token}`);
    }
    return value;
  };

  const width = nextToken();
  const height = nextToken();
  const maxval = nextToken();
  if (maxval < 1 || maxval > 255) {
    throw new Error(`unsupported graymap maxval: ${maxval}`);
  }

  pos++; // single whitespace byte separates the header from the payload
  const expected = width * height;
  const pixels = bytes.subarray(pos, pos + expected);
  if (pixels.length !== expected) {
    throw new Error(
      `graymap payload is ${pixels.length} bytes, expected ${expected}`
    );
  }
  return { width, height, maxval, pixels: new Uint8Array(pixels) };
}
