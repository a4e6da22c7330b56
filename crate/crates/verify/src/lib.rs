//! Golden rows of the genus 10 and genus 11 classification tables, as
//! printed: data set, then the standard cyclic factors `[D_σ; D_τ]`.

pub struct Row {
    pub group: &'static str,
    pub data_set: &'static str,
    pub d_sigma: &'static str,
    pub d_tau: &'static str,
}

pub const TABLE_10: &[Row] = &[
    Row {
        group: "A4",
        data_set: "(4,0;[(1 4)(2 3),2;2,2]^[3],[(1 2 4),3;3],[(1 3 2),3;3]^[2])",
        d_sigma: "(3,3;(2,3)^[3])",
        d_tau: "(3,3;(1,3)^[3])",
    },
    Row {
        group: "A4",
        data_set: "(4,1;[(1 2)(3 4),2;2,2]^[3])",
        d_sigma: "(3,4;-)",
        d_tau: "(3,4;-)",
    },
    Row {
        group: "A5",
        data_set: "(5,0;[(1 5)(2 4),2;2,2],[(2 4)(3 5),2;2,2],[(2 3)(4 5),2;2,2],[(1 2 3 4 5),5;5])",
        d_sigma: "(3,4;-)",
        d_tau: "(5,2;(1,5),(4,5))",
    },
    Row {
        group: "A6",
        data_set: "(6,0;[(1 2)(4 6),2;2,2],[(1 2 4 3)(5 6),4;4,2],[(2 3 4 5 6),5;5])",
        d_sigma: "(3,4;-)",
        d_tau: "(5,2;(1,5),(4,5))",
    },
    Row {
        group: "Σ4",
        data_set: "(4,0;[(2 3),2;2],[(1 2 4 3),4;4],[(1 2 3 4),4;4]^[2])",
        d_sigma: "(2,5;(1,2)^[2])",
        d_tau: "(4,1;(1,4)^[3],(3,4)^[3])",
    },
    Row {
        group: "Σ4",
        data_set: "(4,0;[(1 4)(2 3),2;2,2],[(2 4),2;2],[(3 4),2;2]^[2],[(1 2 3 4),4;4])",
        d_sigma: "(2,4;(1,2)^[6])",
        d_tau: "(4,2;(1,4),(3,4),(1,2)^[2])",
    },
];

pub const TABLE_11: &[Row] = &[
    Row {
        group: "A4",
        data_set: "(4,0;[(1 2)(3 4),2;2,2]^[2],[(1 2 4),3;3],[(1 3 4),3;3]^[2],[(2 3 4),3;3])",
        d_sigma: "(3,3;(1,3)^[2],(2,3)^[2])",
        d_tau: "(3,3;(1,3)^[2],(2,3)^[2])",
    },
    Row {
        group: "A5",
        data_set: "(5,0;[(1 3)(2 4),2;2,2]^[2],[(3 5 4),3;3],[(3 4 5),3;3])",
        d_sigma: "(3,3;(1,3)^[2],(2,3)^[2])",
        d_tau: "(5,3;-)",
    },
    Row {
        group: "Σ4",
        data_set: "(4,0;[(1 3 4),3;3],[(2 3 4),3;3],[(1 2 3 4),4;4]^[2])",
        d_sigma: "(2,6;-)",
        d_tau: "(4,2;(1,4)^[2],(3,4)^[2])",
    },
    Row {
        group: "Σ4",
        data_set: "(4,0;[(1 2),2;2],[(1 3),2;2],[(1 4)(2 3),2;2,2],[(1 4 3),3;3]^[2])",
        d_sigma: "(2,5;(1,2)^[4])",
        d_tau: "(4,3;(1,2)^[2])",
    },
    Row {
        group: "Σ5",
        data_set: "(5,0;[(1 3 2),3;3],[(1 2 5 4),4;4],[(2 3 4 5),4;4])",
        d_sigma: "(2,6;-)",
        d_tau: "(5,3;-)",
    },
    Row {
        group: "Σ5",
        data_set: "(5,0;[(1 4)(2 3),2;2,2],[(1 3 5)(2 4),6;3,2],[(1 2)(3 4 5),6;3,2])",
        d_sigma: "(2,5;(1,2)^[4])",
        d_tau: "(5,3;-)",
    },
];
