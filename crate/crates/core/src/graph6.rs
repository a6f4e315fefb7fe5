//! graph6 encoding: order byte `N+63`, then the upper-triangle adjacency
//! bits in column-major order (x01, x02, x12, x03, x13, x23, ...) packed
//! big-endian into 6-bit groups, each offset by 63, zero-padded.

use crate::error::GraphError;
use crate::graph::Graph;

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::new();
    out.push((n as u8 + 63) as char);
    let mut acc: u8 = 0;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        acc <<= 6 - nbits;
        out.push((acc + 63) as char);
    }
    out
}

pub fn decode(s: &str) -> Result<Graph, GraphError> {
    let bytes = s.trim().as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    if bytes.is_empty() {
        return Err(GraphError::Graph6("empty input".into()));
    }
    if bytes[0] == 126 {
        return Err(GraphError::Graph6(
            "multi-byte order not supported (order must be <= 32)".into(),
        ));
    }
    if bytes[0] < 63 {
        return Err(GraphError::Graph6(format!(
            "invalid order byte {:#04x}",
            bytes[0]
        )));
    }
    let n = (bytes[0] - 63) as usize;
    if n > 32 {
        return Err(GraphError::TooManyVertices(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() != 1 + nbytes {
        return Err(GraphError::Graph6(format!(
            "expected {} data bytes for order {}, got {}",
            nbytes,
            n,
            bytes.len() - 1
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[1 + bit / 6];
            if !(63..127).contains(&byte) {
                return Err(GraphError::Graph6(format!("invalid data byte {:#04x}", byte)));
            }
            if (byte - 63) >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    // trailing padding must be zero
    if nbits % 6 != 0 {
        let last = bytes[nbytes] - 63;
        if last & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(GraphError::Graph6("nonzero padding bits".into()));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;

    #[test]
    fn k4_is_c_tilde() {
        // order byte 'C' = 4+63 = 67; bits x01 x02 x12 x03 x13 x23 = 111111
        // -> 63+63 = 126 = '~'
        assert_eq!(encode(&Graph::complete(4).unwrap()), "C~");
        assert_eq!(decode("C~").unwrap(), Graph::complete(4).unwrap());
    }

    #[test]
    fn small_knowns() {
        assert_eq!(encode(&Graph::empty(0).unwrap()), "?");
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        assert_eq!(encode(&Graph::complete(2).unwrap()), "A_");
        // P3 path on 3 vertices 0-1-2: bits x01=1 x02=0 x12=1 -> 101000 = 40 -> 'g'
        let mut p = Graph::empty(3).unwrap();
        p.add_edge(0, 1);
        p.add_edge(1, 2);
        assert_eq!(encode(&p), "Bg");
    }

    #[test]
    fn roundtrip_various() {
        for g in [
            Graph::complete(7).unwrap(),
            Graph::complete_bipartite(3, 3).unwrap(),
            Graph::cycle(9).unwrap(),
            Graph::empty(13).unwrap(),
            Graph::complete(5)
                .unwrap()
                .disjoint_union(&Graph::star(3).unwrap())
                .unwrap(),
        ] {
            assert_eq!(decode(&encode(&g)).unwrap(), g);
        }
    }

    #[test]
    fn rejects_malformed() {
        assert!(decode("").is_err());
        assert!(decode("C").is_err());
        assert!(decode("C~~").is_err());
        assert!(decode("~??").is_err());
        // K2 with nonzero padding: 'A' then bit 1 plus garbage in padding
        let (k2, _) = Graph::complete(3)
            .unwrap()
            .delete_vertices(VertexSet::singleton(2))
            .unwrap();
        assert_eq!(encode(&k2), "A_");
        assert!(decode("A`").is_err());
    }
}
