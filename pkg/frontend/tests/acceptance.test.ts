// Acceptance gate for the dashboard. Each test prints an ACCEPTANCE
// PASS/FAIL line mirroring the backend's gate so a plain `vitest run`
// shows the verdicts.
import { beforeEach, describe, expect, it } from 'vitest'

import { App } from '../src/app.js'
import { fixture, fixtureDoc } from './helpers.js'

function freshContainer(): HTMLElement {
    const el = document.createElement('div')
    document.body.appendChild(el)
    return el
}

// process.stdout bypasses the reporter's console interception, so the
// verdict lines land in plain `vitest run` output
function verdict(name: string, detail: string, body: () => void): void {
    try {
        body()
    } catch (err) {
        process.stdout.write(`\nACCEPTANCE FAIL: ${name}: ${String(err)}\n`)
        throw err
    }
    process.stdout.write(`\nACCEPTANCE PASS: ${name} [${detail}]\n`)
}

beforeEach(() => {
    window.location.hash = ''
    document.body.replaceChildren()
})

describe('dashboard acceptance', () => {
    it('drill-down: histogram bin click to function to trace view', () => {
        const container = freshContainer()
        new App(container, fixture('fig1'))

        ;(container.querySelector('button[data-metric="auc"]') as HTMLElement).click()
        const mostSignificant = container.querySelector(
            '.histogram-a [data-side="a"][data-bin="0"], [data-side="a"][data-bin="0"]',
        ) as HTMLElement
        mostSignificant.click()

        const links = Array.from(container.querySelectorAll('.function-list a'))
        expect(links.map(a => a.textContent)).toEqual(['neg_sphere_2d'])

        ;(links[0] as HTMLElement).click()
        const trace = container.querySelector('.trace-view') as HTMLElement
        expect(trace).not.toBeNull()
        expect(trace.dataset['function']).toBe('neg_sphere_2d')

        const read = (side: string) => {
            const g = trace.querySelector(`.series-${side}`) as SVGGElement
            return {
                median: JSON.parse(g.dataset['median']!) as number[],
                q25: JSON.parse(g.dataset['q25']!) as number[],
                q75: JSON.parse(g.dataset['q75']!) as number[],
            }
        }
        const a = read('a')
        const b = read('b')
        verdict(
            'dashboard drill-down (bin -> function -> trace)',
            `bands end at ${a.median.at(-1)}, A median at eval 20 ` +
            `${a.median[19]} > B ${b.median[19]}`,
            () => {
                for (const s of [a, b]) {
                    expect(s.median.at(-1)).toBe(0.97)
                    expect(s.q25.at(-1)).toBe(0.97)
                    expect(s.q75.at(-1)).toBe(0.97)
                }
                expect(a.median[19]!).toBeGreaterThan(b.median[19]!)
            },
        )
    })

    it('pure presentation: every rendered number exists verbatim in report.json', () => {
        // Tokenizer shared by both sides of the diff: standalone decimal or
        // scientific-notation numbers, not digits embedded in identifiers.
        const NUMBER = /(?<![\w.])-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?(?![\w.])/g

        const allowed = new Set<string>()
        const absorb = (node: unknown): void => {
            if (typeof node === 'number') {
                allowed.add(String(node))
            } else if (typeof node === 'string') {
                for (const token of node.match(NUMBER) ?? []) {
                    allowed.add(String(Number(token)))
                }
            } else if (Array.isArray(node)) {
                node.forEach(absorb)
            } else if (typeof node === 'object' && node !== null) {
                Object.values(node).forEach(absorb)
            }
        }
        absorb(fixtureDoc('fig1'))

        const domTokens = (root: HTMLElement): string[] => {
            const walker = document.createTreeWalker(root, NodeFilter.SHOW_TEXT)
            const tokens: string[] = []
            while (walker.nextNode()) {
                const text = walker.currentNode.textContent ?? ''
                tokens.push(...(text.match(NUMBER) ?? []))
            }
            return tokens
        }

        const container = freshContainer()
        new App(container, fixture('fig1'))
        const seen: string[] = []
        const offenders = new Set<string>()
        const sweep = () => {
            for (const token of domTokens(container)) {
                seen.push(token)
                if (!allowed.has(String(Number(token)))) offenders.add(token)
            }
        }

        sweep() // overview: totals table + best_found histogram
        ;(container.querySelector('button[data-metric="auc"]') as HTMLElement).click()
        ;(container.querySelector('[data-side="a"][data-bin="0"]') as HTMLElement).click()
        sweep() // histogram with an open bin list
        ;(container.querySelector('.function-list a') as HTMLElement).click()
        sweep() // trace view with the metric summary table

        verdict(
            'pure presentation (DOM numbers verbatim from report.json)',
            `${seen.length} rendered tokens checked, ${offenders.size} offenders`,
            () => {
                expect(offenders).toEqual(new Set())
                // the diff has to have actually seen the interesting numbers
                expect(seen.length).toBeGreaterThan(20)
                const outcome = fixture('fig1').per_function['neg_sphere_2d']!.outcomes['auc']!
                expect(seen).toContain(String(outcome.p_value))
            },
        )
    })
})
