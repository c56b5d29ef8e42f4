// Shapes mirror report.json exactly; the dashboard adds nothing on top.

export type QuantileBands = {
    median: number[]
    q25: number[]
    q75: number[]
}

export type MetricVector = {
    best_found: number
    auc: number
}

export type Outcome = {
    mean_a: number
    mean_b: number
    u_statistic: number
    p_value: number
    direction: 'a_higher' | 'b_higher' | 'equal_means'
    significant: boolean
}

export type FunctionEntry = {
    traces: Record<string, QuantileBands>
    runs: Record<string, MetricVector[]>
    outcomes: Record<string, Outcome>
    verdict: 'win' | 'lose' | 'tie' | 'mixed'
}

export type Histogram = {
    edges: number[]
    a_bins: string[][]
    b_bins: string[][]
}

export type Totals = {
    wins: number
    loses: number
    ties: number
    mixed: number
}

export type Pair = {
    method_a: string
    method_b: string
    label_a: string
    label_b: string
}

export type Exclusion = {
    function_id: string
    reason: string
}

export type ReportBundle = {
    schema_version: string
    fingerprint: string
    pair: Pair
    alpha: number
    budget: number
    metrics: string[]
    per_function: Record<string, FunctionEntry>
    histograms: Record<string, Histogram>
    totals: Totals
    exclusions: Exclusion[]
}

export type HistogramSide = 'a' | 'b'

export type ViewState = {
    selected_metric: string
    selected_bin: { side: HistogramSide; index: number } | null
    selected_function: string | null
}
